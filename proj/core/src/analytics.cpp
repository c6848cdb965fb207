#include "exkit/analytics.hpp"

#include "exkit/brownian.hpp"
#include "exkit/error.hpp"
#include "exkit/ou_transforms.hpp"
#include "exkit/parallel.hpp"
#include "exkit/quadrature.hpp"

#include <cmath>
#include <limits>
#include <variant>

namespace exkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_delta(double delta)
{
    if (!(delta > 0.0) || !std::isfinite(delta)) fail(ErrorCode::InvalidParam, "delta must be > 0");
}

// log s(delta) - log s(delta + x).
double log_ratio(const ScaleFunction& s, double log_s_delta, double delta, double x)
{
    return log_s_delta - s.log_value(delta + x);
}

} // namespace

double stop_loss_probability(const ScaleFunction& s, double delta, double M)
{
    check_delta(delta);
    if (!(M > 0.0) || std::isnan(M)) fail(ErrorCode::InvalidParam, "M must be > 0");
    if (s.kind() == ScaleFunction::Kind::brownian) return std::isinf(M) ? 0.0 : delta / (M + delta);
    if (std::isinf(M)) fail(ErrorCode::InvalidParam, "M must be finite");
    return std::exp(log_ratio(s, s.log_value(delta), delta, M));
}

double stop_loss_probability(const DiffusionModel& model, double delta, double M)
{
    return stop_loss_probability(ScaleFunction(model), delta, M);
}

double stop_loss_quantile(const ScaleFunction& s, double delta, double q)
{
    check_delta(delta);
    if (!(q > 0.0 && q < 1.0)) fail(ErrorCode::InvalidParam, "q must be in (0,1)");
    if (s.kind() == ScaleFunction::Kind::brownian) return delta * (1.0 / q - 1.0);

    // Solve log s(x) = log s(delta) - log q for x > delta.
    const double target = s.log_value(delta) - std::log(q);
    auto g = [&](double x) { return s.log_value(x) - target; };
    double lo = delta, hi = 2.0 * delta;
    double g_hi = g(hi);
    while (g_hi < 0.0) {
        lo = hi;
        hi = delta + 2.0 * (hi - delta);
        if (hi > 1e12 * (1.0 + delta))
            fail(ErrorCode::RootNotBracketed, "scale function stays below s(delta)/q");
        g_hi = g(hi);
    }
    double g_lo = g(lo);

    // Bisection until the bracket is narrow, then safeguarded secant.
    const double tol = 1e-10;
    for (int i = 0; i < 200 && hi - lo > 1e-3 * (1.0 + hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm < 0.0) {
            lo = mid;
            g_lo = gm;
        } else {
            hi = mid;
            g_hi = gm;
        }
    }
    // Bracketed secant with the Illinois weight so both ends keep moving.
    double x = hi;
    int side = 0;
    for (int i = 0; i < 200 && hi - lo > tol; ++i) {
        x = (lo * g_hi - hi * g_lo) / (g_hi - g_lo);
        if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        const double gx = g(x);
        if (gx == 0.0) break;
        if (gx < 0.0) {
            if (std::abs(x - lo) < 0.5 * tol) break;
            lo = x;
            g_lo = gx;
            if (side == -1) g_hi *= 0.5;
            side = -1;
        } else {
            if (std::abs(hi - x) < 0.5 * tol) break;
            hi = x;
            g_hi = gx;
            if (side == 1) g_lo *= 0.5;
            side = 1;
        }
    }
    return x - delta;
}

double stop_loss_quantile(const DiffusionModel& model, double delta, double q)
{
    return stop_loss_quantile(ScaleFunction(model), delta, q);
}

double expected_max_loss(const ScaleFunction& s, double delta, double M)
{
    check_delta(delta);
    if (!(M > 0.0) || std::isnan(M)) fail(ErrorCode::InvalidParam, "M must be > 0");
    if (s.kind() == ScaleFunction::Kind::brownian) return std::isinf(M) ? kInf : delta * std::log1p(M / delta);

    const double lsd = s.log_value(delta);
    auto f = [&](double x) { return std::exp(log_ratio(s, lsd, delta, x)); };
    double upper = M;
    if (std::isinf(M)) {
        // Integrate until the ratio is negligible.
        upper = delta;
        while (log_ratio(s, lsd, delta, upper) > -45.0) {
            upper *= 2.0;
            if (upper > 1e9 * delta) fail(ErrorCode::QuadratureFailure, "max-loss integrand does not decay");
        }
    }
    // Split into pieces so the adaptive rule sees the decay scale.
    double total = 0.0, a = 0.0, width = std::min(delta, upper);
    while (a < upper) {
        const double b = std::min(upper, a + width);
        total += integrate(f, a, b, 1e-12);
        a = b;
        width *= 2.0;
    }
    return total;
}

double expected_max_loss(const DiffusionModel& model, double delta, double M)
{
    return expected_max_loss(ScaleFunction(model), delta, M);
}

double per_cycle_expected_profit(const ScaleFunction& s, double delta, double M)
{
    check_delta(delta);
    if (!(M > 0.0) || std::isnan(M)) fail(ErrorCode::InvalidParam, "M must be > 0");
    // Brownian motion is a fair game: (M + delta) delta / (M + delta) = delta.
    if (s.kind() == ScaleFunction::Kind::brownian) return 0.0;
    if (!std::isinf(M)) return delta - (M + delta) * stop_loss_probability(s, delta, M);

    // Limit of (M + delta) s(delta) / s(M + delta) as M grows.
    const double lsd = s.log_value(delta);
    double x = delta, term = kInf, prev = kInf;
    for (int i = 0; i < 60; ++i) {
        term = (x + delta) * std::exp(log_ratio(s, lsd, delta, x));
        if (term < 1e-15 * delta || std::abs(term - prev) < 1e-12 * delta) break;
        prev = term;
        x *= 2.0;
    }
    return delta - term;
}

double per_cycle_expected_profit(const DiffusionModel& model, double delta, double M)
{
    return per_cycle_expected_profit(ScaleFunction(model), delta, M);
}

double expected_realized_profit(const DiffusionModel& model, double delta, double M, double t,
                                const RenewalOptions& options)
{
    if (t < 0.0) fail(ErrorCode::InvalidParam, "t must be >= 0");
    const double per_cycle = per_cycle_expected_profit(model, delta, M);
    if (t == 0.0 || per_cycle == 0.0) return 0.0;
    return expected_trades(model, delta, t, options) * per_cycle;
}

double waiting_mgf(const DiffusionModel& model, double lambda, double delta)
{
    check_delta(delta);
    if (!(lambda >= 0.0)) fail(ErrorCode::InvalidParam, "lambda must be >= 0");
    if (lambda == 0.0) return 1.0;
    if (const auto* bm = std::get_if<Brownian>(&model)) return bm_laplace_tau(lambda, delta, bm->sigma);
    if (const auto* ou = std::get_if<OrnsteinUhlenbeck>(&model)) return ou_waiting_mgf(lambda, delta, *ou);
    fail(ErrorCode::InvalidParam, "cycle transforms need bm or ou");
}

double holding_mgf(const DiffusionModel& model, double lambda, double delta)
{
    check_delta(delta);
    if (!(lambda >= 0.0)) fail(ErrorCode::InvalidParam, "lambda must be >= 0");
    if (lambda == 0.0) return 1.0;
    if (const auto* bm = std::get_if<Brownian>(&model)) return bm_laplace_tau(lambda, delta, bm->sigma);
    if (const auto* ou = std::get_if<OrnsteinUhlenbeck>(&model)) return ou_holding_mgf(lambda, delta, *ou);
    fail(ErrorCode::InvalidParam, "cycle transforms need bm or ou");
}

double cycle_mgf(const DiffusionModel& model, double lambda, double delta)
{
    check_delta(delta);
    if (!(lambda >= 0.0)) fail(ErrorCode::InvalidParam, "lambda must be >= 0");
    if (lambda == 0.0) return 1.0;
    if (const auto* bm = std::get_if<Brownian>(&model)) return BrownianCycleLaws(bm->sigma, delta).cycle_mgf(lambda);
    return waiting_mgf(model, lambda, delta) * holding_mgf(model, lambda, delta);
}

std::vector<FrontierPoint> efficient_frontier(const DiffusionModel& model, std::span<const double> delta_grid,
                                              double M, double horizon, unsigned threads,
                                              const RenewalOptions& options)
{
    if (!std::holds_alternative<OrnsteinUhlenbeck>(model))
        fail(ErrorCode::InvalidParam, "efficient frontier is defined for the OU model");
    const ScaleFunction s(model);
    std::vector<FrontierPoint> out(delta_grid.size());
    parallel_for(delta_grid.size(), threads, [&](std::size_t i) {
        const double d = delta_grid[i];
        out[i] = {d, expected_max_loss(s, d, M), expected_realized_profit(model, d, M, horizon, options)};
    });
    return out;
}

} // namespace exkit
