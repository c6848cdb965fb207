#pragma once

#include "exkit/first_passage.hpp"
#include "exkit/models.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace exkit {

/// Expected number of completed cycles n(t) on a uniform grid.
struct RenewalSolution {
    std::vector<double> t_grid;
    std::vector<double> n_delta;
    /// Slope used beyond the grid (1 / mean cycle length); 0 disables extrapolation.
    double tail_slope = 0.0;

    /// Linear interpolation on the grid, linear extrapolation past its end.
    [[nodiscard]] double at(double t) const;
};

/// Solves n = F + n * dF by forward substitution with the left-endpoint
/// Stieltjes rule n_i = F_i + sum_{j=1..i} n_{i-j} (F_j - F_{j-1}).
/// Non-uniform grids are first resampled by linear interpolation of F.
RenewalSolution renewal_solve(std::span<const double> F_theta, std::span<const double> t_grid);

/// sup_i |n_i - F_i - sum_j n_{i-j} dF_j| on the solution grid.
double renewal_residual(const RenewalSolution& solution, std::span<const double> F_theta);

/// CDF of the sum of two independent non-negative times, both sampled on the same uniform grid.
std::vector<double> convolve_cdfs(std::span<const double> F_a, std::span<const double> F_b);

/// CDF of the delta-cycle duration (waiting + holding) on a uniform grid from 0.
std::vector<double> cycle_duration_cdf(const DiffusionModel& model, double delta, std::span<const double> t_grid,
                                       const PdeOptions& pde = {});

/// Mean cycle duration; +infinity for Brownian motion.
double mean_cycle_duration(const DiffusionModel& model, double delta);

struct RenewalOptions {
    std::size_t grid_points = 4001;
    /// OU: solve on [0, horizon_factor * mean cycle] and extrapolate linearly beyond.
    double horizon_factor = 30.0;
    PdeOptions pde;
};

RenewalSolution renewal_function(const DiffusionModel& model, double delta, double t_max,
                                 const RenewalOptions& options = {});

/// n_delta(t): expected number of completed trades by time t.
double expected_trades(const DiffusionModel& model, double delta, double t, const RenewalOptions& options = {});

} // namespace exkit
