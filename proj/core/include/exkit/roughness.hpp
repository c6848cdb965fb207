#pragma once

#include "exkit/path.hpp"

#include <cstddef>
#include <limits>
#include <vector>

namespace exkit {

/// Indices of successive hits of the grid step*Z. A new point is recorded at
/// the first sample at least one step away from the current grid level; the
/// level then moves by the whole number of steps crossed.
std::vector<std::size_t> lebesgue_partition(const Path& path, double grid_step);

struct CrossingCurve {
    std::vector<double> deltas;  ///< decreasing
    std::vector<std::size_t> counts;
    std::vector<double> realized_profit;  ///< delta * count
    /// Smallest delta resolvable by the sampling grid; fits ignore deltas below it.
    double resolution = 0.0;
};

struct CurveOptions {
    /// Unit of the dyadic grid; 0 selects the sample standard deviation.
    double scale = 0.0;
};

/// D^delta_T for delta_n = scale * 2^-n, n = n_min..n_max.
CrossingCurve crossing_curve(const Path& path, int n_min, int n_max, const CurveOptions& options = {});

/// Twice the root-mean-square sample increment.
double sampling_resolution(const Path& path);

/// D^delta_T * delta^(p-1).
double local_time_estimate(const Path& path, double delta, double p);

struct RoughnessEstimate {
    double p_hat = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double delta_min = 0.0;
    double delta_max = 0.0;
    std::size_t points = 0;
};

struct FitOptions {
    std::size_t min_count = 5;
    /// Extra bounds on the fitted delta range, on top of curve.resolution.
    double delta_min = 0.0;
    double delta_max = std::numeric_limits<double>::infinity();
};

/// OLS of log(count) on log(delta) over the usable points; p_hat = 1 - slope.
RoughnessEstimate roughness_exponent(const CrossingCurve& curve, const FitOptions& options = {});

} // namespace exkit
