#include "exkit/roughness.hpp"

#include "exkit/crossings.hpp"
#include "exkit/error.hpp"
#include "exkit/stats.hpp"

#include <algorithm>
#include <cmath>

namespace exkit {

std::vector<std::size_t> lebesgue_partition(const Path& path, double grid_step)
{
    if (!(grid_step > 0.0) || !std::isfinite(grid_step)) fail(ErrorCode::InvalidParam, "grid step must be positive");
    const auto v = path.values();
    std::vector<std::size_t> out{0};
    double level = grid_step * std::round(v[0] / grid_step);
    for (std::size_t i = 1; i < v.size(); ++i) {
        const double gap = v[i] - level;
        if (std::abs(gap) >= grid_step) {
            level += std::copysign(grid_step * std::floor(std::abs(gap) / grid_step), gap);
            out.push_back(i);
        }
    }
    return out;
}

double sampling_resolution(const Path& path)
{
    const auto v = path.values();
    double ss = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) ss += (v[i] - v[i - 1]) * (v[i] - v[i - 1]);
    return 2.0 * std::sqrt(ss / static_cast<double>(v.size() - 1));
}

CrossingCurve crossing_curve(const Path& path, int n_min, int n_max, const CurveOptions& options)
{
    if (n_min < 0 || n_max <= n_min) fail(ErrorCode::InvalidParam, "need n_max > n_min >= 0");
    double scale = options.scale;
    if (scale == 0.0) scale = sample_stddev(path.values());
    if (!(scale > 0.0) || !std::isfinite(scale))
        fail(ErrorCode::InvalidParam, "grid scale must be positive (constant path?)");

    CrossingCurve curve;
    curve.resolution = sampling_resolution(path);
    for (int n = n_min; n <= n_max; ++n) {
        const double delta = std::ldexp(scale, -n);
        const std::size_t d = count_crossings(path.values(), delta);
        curve.deltas.push_back(delta);
        curve.counts.push_back(d);
        curve.realized_profit.push_back(delta * static_cast<double>(d));
    }
    return curve;
}

double local_time_estimate(const Path& path, double delta, double p)
{
    if (!(p >= 1.0)) fail(ErrorCode::InvalidParam, "p must be >= 1");
    const std::size_t d = count_crossings(path.values(), delta);
    if (d == 0) return 0.0;
    return static_cast<double>(d) * std::pow(delta, p - 1.0);
}

RoughnessEstimate roughness_exponent(const CrossingCurve& curve, const FitOptions& options)
{
    if (curve.deltas.size() != curve.counts.size()) fail(ErrorCode::LengthMismatch, "curve columns differ in length");
    const double lo = std::max(options.delta_min, curve.resolution);
    std::vector<double> lx, ly;
    RoughnessEstimate est;
    est.delta_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < curve.deltas.size(); ++i) {
        const double delta = curve.deltas[i];
        if (curve.counts[i] == 0 || curve.counts[i] < options.min_count) continue;
        if (delta < lo || delta > options.delta_max) continue;
        lx.push_back(std::log(delta));
        ly.push_back(std::log(static_cast<double>(curve.counts[i])));
        est.delta_min = std::min(est.delta_min, delta);
        est.delta_max = std::max(est.delta_max, delta);
    }
    if (lx.size() < 3)
        fail(ErrorCode::InsufficientData,
             "roughness fit needs 3 usable grid points, found " + std::to_string(lx.size()));
    const LinearFit fit = ols(lx, ly);
    est.slope = fit.slope;
    est.intercept = fit.intercept;
    est.r_squared = fit.r_squared;
    est.points = fit.n;
    est.p_hat = 1.0 - fit.slope;
    return est;
}

} // namespace exkit
