#pragma once

#include "exkit/models.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace exkit {

struct PdeOptions {
    /// Space nodes between the start and the target level.
    std::size_t nodes_per_gap = 200;
    /// Extent of the domain behind the start, in stationary (OU) or diffusive (BM) standard deviations.
    double domain_sigmas = 8.0;
    /// Crank-Nicolson steps per output interval (at least 2).
    std::size_t time_substeps = 4;
    std::size_t max_nodes = 20000;
};

/// P^start(T^target <= t) on a uniform grid starting at t = 0, from the
/// backward Kolmogorov equation (Crank-Nicolson, Rannacher start, absorbing
/// at the target, reflecting at the far end). BM and OU models only.
std::vector<double> first_passage_cdf(const DiffusionModel& model, double start, double target,
                                      std::span<const double> t_grid, const PdeOptions& options = {});

} // namespace exkit
