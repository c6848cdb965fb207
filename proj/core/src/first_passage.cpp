#include "exkit/first_passage.hpp"

#include "exkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

namespace exkit {
namespace {

void check_uniform_grid(std::span<const double> t)
{
    if (t.size() < 2) fail(ErrorCode::InvalidParam, "time grid needs at least two points");
    if (t[0] != 0.0) fail(ErrorCode::InvalidParam, "time grid must start at 0");
    const double h = t[1] - t[0];
    if (!(h > 0.0)) fail(ErrorCode::InvalidParam, "time grid must be increasing");
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (std::abs((t[i] - t[i - 1]) - h) > 1e-9 * h) fail(ErrorCode::InvalidParam, "time grid must be uniform");
    }
}

// Solves a tridiagonal system in place (Thomas); rhs becomes the solution.
void thomas(std::span<const double> lower, std::span<const double> diag, std::span<const double> upper,
            std::span<double> rhs, std::vector<double>& work)
{
    const std::size_t n = diag.size();
    work.resize(n);
    double beta = diag[0];
    rhs[0] /= beta;
    for (std::size_t i = 1; i < n; ++i) {
        work[i] = upper[i - 1] / beta;
        beta = diag[i] - lower[i] * work[i];
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / beta;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= work[i + 1] * rhs[i + 1];
}

} // namespace

std::vector<double> first_passage_cdf(const DiffusionModel& model, double start, double target,
                                      std::span<const double> t_grid, const PdeOptions& options)
{
    check_uniform_grid(t_grid);
    if (!std::isfinite(start) || !std::isfinite(target) || start == target)
        fail(ErrorCode::InvalidParam, "start and target must be distinct finite levels");
    if (options.nodes_per_gap < 4 || options.time_substeps < 2)
        fail(ErrorCode::InvalidParam, "PDE grid is too coarse");

    double var = 0.0, alpha = 0.0, mu = 0.0, spread = 0.0;
    const double t_max = t_grid.back();
    if (const auto* bm = std::get_if<Brownian>(&model)) {
        var = bm->sigma * bm->sigma;
        spread = bm->sigma * std::sqrt(t_max);
    } else if (const auto* ou = std::get_if<OrnsteinUhlenbeck>(&model)) {
        validate(model);
        var = ou->gamma * ou->gamma;
        alpha = ou->alpha;
        mu = ou->mu;
        spread = ou->stationary_stddev();
    } else {
        fail(ErrorCode::InvalidParam, "first-passage PDE supports bm and ou");
    }
    if (!(var > 0.0)) fail(ErrorCode::InvalidParam, "diffusion coefficient must be > 0");

    // xi = distance from the target, measured towards the start: x = target - dir * xi.
    const double dir = target > start ? 1.0 : -1.0;
    const double gap = std::abs(target - start);
    double behind = gap + options.domain_sigmas * spread;
    if (std::holds_alternative<OrnsteinUhlenbeck>(model)) {
        const double far = dir > 0 ? std::min(start, mu) - options.domain_sigmas * spread
                                   : std::max(start, mu) + options.domain_sigmas * spread;
        behind = std::max(behind, std::abs(target - far));
    }
    std::size_t m = options.nodes_per_gap;
    double h = gap / static_cast<double>(m);
    auto total_nodes = [&] { return static_cast<std::size_t>(std::ceil(behind / h)) + 1; };
    while (total_nodes() > options.max_nodes && m > 8) {
        m /= 2;
        h = gap / static_cast<double>(m);
    }
    const std::size_t n = std::max(total_nodes(), m + 2);

    // Unknowns are nodes 1..n-1; node 0 is the absorbing target (u = 1).
    const std::size_t k = n - 1;
    std::vector<double> lo(k), di(k), up(k);
    for (std::size_t j = 0; j < k; ++j) {
        const double xi = static_cast<double>(j + 1) * h;
        const double x = target - dir * xi;
        const double b = -alpha * (x - mu);
        lo[j] = 0.5 * var / (h * h) + dir * b / (2.0 * h);
        di[j] = -var / (h * h);
        up[j] = 0.5 * var / (h * h) - dir * b / (2.0 * h);
    }
    // Reflecting far end: ghost node mirrors its neighbour.
    lo[k - 1] = var / (h * h);
    up[k - 1] = 0.0;
    const double boundary_flux = lo[0];

    std::vector<double> u(k, 0.0), rhs(k), work;
    std::vector<double> a_lo(k), a_di(k), a_up(k);
    auto step = [&](double dt, double theta) {
        for (std::size_t j = 0; j < k; ++j) {
            double explicit_part = di[j] * u[j];
            if (j > 0) explicit_part += lo[j] * u[j - 1];
            if (j + 1 < k) explicit_part += up[j] * u[j + 1];
            rhs[j] = u[j] + (1.0 - theta) * dt * explicit_part;
            a_lo[j] = -theta * dt * lo[j];
            a_di[j] = 1.0 - theta * dt * di[j];
            a_up[j] = -theta * dt * up[j];
        }
        rhs[0] += dt * boundary_flux;
        thomas(a_lo, a_di, a_up, rhs, work);
        u.swap(rhs);
    };

    const double dt_out = t_grid[1] - t_grid[0];
    const double dt = dt_out / static_cast<double>(options.time_substeps);
    const std::size_t start_node = m - 1;
    std::vector<double> out(t_grid.size(), 0.0);
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        std::size_t s = 0;
        if (i == 1) {
            for (int r = 0; r < 4; ++r) step(0.5 * dt, 1.0);
            s = 2;
        }
        for (; s < options.time_substeps; ++s) step(dt, 0.5);
        out[i] = std::clamp(u[start_node], 0.0, 1.0);
    }
    // Monotone by construction up to round-off; enforce it for downstream CDF checks.
    for (std::size_t i = 1; i < out.size(); ++i) out[i] = std::max(out[i], out[i - 1]);
    return out;
}

} // namespace exkit
