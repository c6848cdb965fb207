#include "exkit/renewal.hpp"

#include "exkit/error.hpp"
#include "exkit/ou_transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>

namespace exkit {

double RenewalSolution::at(double t) const
{
    if (t <= t_grid.front()) return n_delta.front();
    if (t >= t_grid.back()) return n_delta.back() + tail_slope * (t - t_grid.back());
    const auto it = std::upper_bound(t_grid.begin(), t_grid.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - t_grid.begin());
    const double w = (t - t_grid[i - 1]) / (t_grid[i] - t_grid[i - 1]);
    return n_delta[i - 1] + w * (n_delta[i] - n_delta[i - 1]);
}

namespace {

constexpr double kCdfSlack = 1e-12;

void check_cdf(std::span<const double> F)
{
    for (std::size_t i = 0; i < F.size(); ++i) {
        if (!std::isfinite(F[i]) || F[i] < -kCdfSlack || F[i] > 1.0 + kCdfSlack)
            fail(ErrorCode::InvalidCDF, "CDF value outside [0,1] at index " + std::to_string(i));
        if (i > 0 && F[i] < F[i - 1] - kCdfSlack)
            fail(ErrorCode::InvalidCDF, "CDF decreases at index " + std::to_string(i));
    }
}

bool is_uniform(std::span<const double> t)
{
    const double h = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (std::abs(t[i] - t[i - 1] - h) > 1e-9 * h) return false;
    }
    return true;
}

std::vector<double> forward_substitution(std::span<const double> F)
{
    const std::size_t n = F.size();
    std::vector<double> dF(n, 0.0), out(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) dF[j] = F[j] - F[j - 1];
    for (std::size_t i = 0; i < n; ++i) {
        double acc = F[i];
        for (std::size_t j = 1; j <= i; ++j) acc += out[i - j] * dF[j];
        out[i] = acc;
    }
    return out;
}

} // namespace

RenewalSolution renewal_solve(std::span<const double> F_theta, std::span<const double> t_grid)
{
    if (F_theta.size() != t_grid.size()) fail(ErrorCode::LengthMismatch, "CDF and grid differ in length");
    if (t_grid.size() < 2) fail(ErrorCode::InvalidParam, "renewal grid needs at least two points");
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) fail(ErrorCode::InvalidParam, "renewal grid must be increasing");
    }
    if (t_grid.front() < 0.0) fail(ErrorCode::InvalidParam, "renewal grid must start at t >= 0");
    check_cdf(F_theta);

    RenewalSolution sol;
    std::vector<double> F(F_theta.begin(), F_theta.end());
    for (double& f : F) f = std::clamp(f, 0.0, 1.0);
    sol.t_grid.assign(t_grid.begin(), t_grid.end());
    if (!is_uniform(t_grid)) {
        const std::size_t n = t_grid.size();
        const double a = t_grid.front(), h = (t_grid.back() - a) / static_cast<double>(n - 1);
        std::vector<double> G(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double t = i + 1 == n ? t_grid.back() : a + static_cast<double>(i) * h;
            sol.t_grid[i] = t;
            const auto it = std::upper_bound(t_grid.begin(), t_grid.end(), t);
            const std::size_t k = std::clamp<std::size_t>(static_cast<std::size_t>(it - t_grid.begin()), 1, n - 1);
            const double w = std::clamp((t - t_grid[k - 1]) / (t_grid[k] - t_grid[k - 1]), 0.0, 1.0);
            G[i] = F[k - 1] + w * (F[k] - F[k - 1]);
        }
        F.swap(G);
    }
    sol.n_delta = forward_substitution(F);
    return sol;
}

double renewal_residual(const RenewalSolution& solution, std::span<const double> F_theta)
{
    const auto& n = solution.n_delta;
    if (F_theta.size() != n.size()) fail(ErrorCode::LengthMismatch, "CDF and solution differ in length");
    double worst = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        double rhs = F_theta[i];
        for (std::size_t j = 1; j <= i; ++j) rhs += n[i - j] * (F_theta[j] - F_theta[j - 1]);
        worst = std::max(worst, std::abs(n[i] - rhs));
    }
    return worst;
}

std::vector<double> convolve_cdfs(std::span<const double> F_a, std::span<const double> F_b)
{
    if (F_a.size() != F_b.size()) fail(ErrorCode::LengthMismatch, "CDFs differ in length");
    const std::size_t n = F_a.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= i; ++j)
            acc += 0.5 * (F_a[i - j] + F_a[i - j + 1]) * (F_b[j] - F_b[j - 1]);
        out[i] = std::clamp(acc, 0.0, 1.0);
    }
    for (std::size_t i = 1; i < n; ++i) out[i] = std::max(out[i], out[i - 1]);
    return out;
}

std::vector<double> cycle_duration_cdf(const DiffusionModel& model, double delta, std::span<const double> t_grid,
                                       const PdeOptions& pde)
{
    if (!(delta > 0.0)) fail(ErrorCode::InvalidParam, "delta must be > 0");
    if (const auto* bm = std::get_if<Brownian>(&model)) {
        if (!(bm->sigma > 0.0)) fail(ErrorCode::InvalidParam, "BM: sigma must be > 0");
        // Waiting + holding is the first passage to 2 delta: a Levy law.
        std::vector<double> out(t_grid.size(), 0.0);
        for (std::size_t i = 0; i < t_grid.size(); ++i) {
            if (t_grid[i] > 0.0) out[i] = std::erfc(2.0 * delta / (bm->sigma * std::sqrt(2.0 * t_grid[i])));
        }
        return out;
    }
    const auto waiting = first_passage_cdf(model, 0.0, delta, t_grid, pde);
    const auto holding = first_passage_cdf(model, delta, 0.0, t_grid, pde);
    return convolve_cdfs(waiting, holding);
}

double mean_cycle_duration(const DiffusionModel& model, double delta)
{
    if (std::holds_alternative<Brownian>(model)) return std::numeric_limits<double>::infinity();
    const auto* ou = std::get_if<OrnsteinUhlenbeck>(&model);
    if (!ou) fail(ErrorCode::InvalidParam, "cycle statistics need bm or ou");
    return ou_mean_waiting(delta, *ou) + ou_mean_holding(delta, *ou);
}

RenewalSolution renewal_function(const DiffusionModel& model, double delta, double t_max,
                                 const RenewalOptions& options)
{
    if (!(t_max > 0.0) || !std::isfinite(t_max)) fail(ErrorCode::InvalidParam, "horizon must be positive");
    if (options.grid_points < 3) fail(ErrorCode::InvalidParam, "renewal grid needs at least three points");
    const double mean = mean_cycle_duration(model, delta);
    double span = t_max;
    double slope = 0.0;
    if (std::isfinite(mean)) {
        span = std::min(t_max, options.horizon_factor * mean);
        slope = 1.0 / mean;
    }
    std::vector<double> t(options.grid_points);
    const double h = span / static_cast<double>(options.grid_points - 1);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i) * h;
    t.back() = span;
    RenewalSolution sol = renewal_solve(cycle_duration_cdf(model, delta, t, options.pde), t);
    sol.tail_slope = slope;
    return sol;
}

double expected_trades(const DiffusionModel& model, double delta, double t, const RenewalOptions& options)
{
    if (t == 0.0) return 0.0;
    return renewal_function(model, delta, t, options).at(t);
}

} // namespace exkit
