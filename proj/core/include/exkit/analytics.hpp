#pragma once

#include "exkit/models.hpp"
#include "exkit/renewal.hpp"
#include "exkit/scale.hpp"

#include <span>
#include <vector>

namespace exkit {

/// s(delta) / s(delta + M): probability that a cycle entered at delta is stopped out.
double stop_loss_probability(const ScaleFunction& s, double delta, double M);
double stop_loss_probability(const DiffusionModel& model, double delta, double M);

/// Stop distance M_q with stop_loss_probability(delta, M_q) = q.
double stop_loss_quantile(const ScaleFunction& s, double delta, double q);
double stop_loss_quantile(const DiffusionModel& model, double delta, double q);

/// int_0^M s(delta) / s(delta + x) dx; M may be +infinity.
double expected_max_loss(const ScaleFunction& s, double delta, double M);
double expected_max_loss(const DiffusionModel& model, double delta, double M);

/// delta - (M + delta) s(delta) / s(M + delta): mean of the Bernoulli
/// per-cycle P&L {delta, -M}. M = infinity gives the no-stop limit.
double per_cycle_expected_profit(const ScaleFunction& s, double delta, double M);
double per_cycle_expected_profit(const DiffusionModel& model, double delta, double M);

/// n_delta(t) * per-cycle profit; n_delta ignores stop-outs.
double expected_realized_profit(const DiffusionModel& model, double delta, double M, double t,
                                const RenewalOptions& options = {});

double waiting_mgf(const DiffusionModel& model, double lambda, double delta);
double holding_mgf(const DiffusionModel& model, double lambda, double delta);
/// E[exp(-lambda theta_1)] = waiting_mgf * holding_mgf.
double cycle_mgf(const DiffusionModel& model, double lambda, double delta);

struct FrontierPoint {
    double delta = 0.0;
    double expected_max_loss = 0.0;
    double expected_profit = 0.0;
};

std::vector<FrontierPoint> efficient_frontier(const DiffusionModel& model, std::span<const double> delta_grid,
                                              double M, double horizon, unsigned threads = 1,
                                              const RenewalOptions& options = {});

} // namespace exkit
