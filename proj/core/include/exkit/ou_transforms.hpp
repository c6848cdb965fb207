#pragma once

#include "exkit/models.hpp"

namespace exkit {

/// Branch of the OU Laplace eigenfunction.
/// `increasing`: Phi_{lambda,-}(x) = int_0^inf u^{lambda/alpha - 1} exp(beta (x - mu) u - u^2/2) du,
/// `decreasing`: the same with beta (x - mu) negated; beta = sqrt(2 alpha) / gamma.
enum class PhiBranch { increasing, decreasing };

double ou_phi(double lambda, double x, const OrnsteinUhlenbeck& model, PhiBranch branch);
double log_ou_phi(double lambda, double x, const OrnsteinUhlenbeck& model, PhiBranch branch);

/// E^0[exp(-lambda T^delta)].
double ou_waiting_mgf(double lambda, double delta, const OrnsteinUhlenbeck& model);
/// E^delta[exp(-lambda T^0)].
double ou_holding_mgf(double lambda, double delta, const OrnsteinUhlenbeck& model);

/// Density of the first passage from delta to 0 of a zero-mean OU process.
double ou_hitting_density(double t, double delta, double alpha, double gamma, double mu = 0.0);
double log_ou_hitting_density(double t, double delta, double alpha, double gamma);

/// Mean first-passage times from the speed-measure representation.
double ou_mean_waiting(double delta, const OrnsteinUhlenbeck& model);
double ou_mean_holding(double delta, const OrnsteinUhlenbeck& model);

} // namespace exkit
