#pragma once

#include "exkit/rng.hpp"

namespace exkit {

/// Laplace-weighted mass of excursions reaching delta under the standard
/// Brownian excursion measure: sqrt(2 lambda) / (exp(2 sqrt(2 lambda) delta) - 1).
double brownian_excursion_measure_laplace(double lambda, double delta);

/// Laplace-weighted mass of the excursions that stay below delta, in the
/// delta -> infinity limit used by the cycle identity: sqrt(2 lambda).
double brownian_excursion_complement_laplace(double lambda);

/// E[exp(-lambda theta_1)] from the two excursion-measure masses: g / (g + c).
double mgf_from_excursion_measure(double reaching_mass, double complement_mass);

/// Closed-form laws of the delta-cycle of S = sigma B.
class BrownianCycleLaws {
public:
    BrownianCycleLaws(double sigma, double delta);

    [[nodiscard]] double sigma() const noexcept { return sigma_; }
    [[nodiscard]] double delta() const noexcept { return delta_; }

    /// delta^2 / sigma^2 * (1/Z^2 + 1/Z'^2).
    double sample_duration(RandomStream& rng) const;
    /// P(waiting > t) = 2 Phi(delta / (sigma sqrt t)) - 1.
    [[nodiscard]] double waiting_survival(double t) const;
    [[nodiscard]] double waiting_cdf(double t) const;
    /// The holding time has the same law as the waiting time.
    [[nodiscard]] double holding_cdf(double t) const { return waiting_cdf(t); }
    /// P(theta <= t): first passage to 2 delta.
    [[nodiscard]] double cycle_cdf(double t) const;
    /// P(worst loss > M) = delta / (M + delta).
    [[nodiscard]] double worst_loss_survival(double M) const;
    [[nodiscard]] double worst_loss_cdf(double M) const { return 1.0 - worst_loss_survival(M); }
    /// delta * log(1 + M / delta); +infinity for M = infinity.
    [[nodiscard]] double expected_max_loss(double M) const;
    /// exp(-2 sqrt(2 lambda) delta / sigma).
    [[nodiscard]] double cycle_mgf(double lambda) const;

private:
    double sigma_;
    double delta_;
};

/// Time-Laplace transforms of the Brownian cycle pieces (argument z > 0).
double bm_laplace_tau(double z, double delta, double sigma);
double bm_laplace_theta(double z, double delta, double sigma);
/// int e^{-zt} E^delta[e^{lambda (S_t - delta)}; t < T^0] dt, for z > sigma^2 lambda^2 / 2.
double bm_u2_transform(double lambda, double z, double delta, double sigma);

/// int_0^inf e^{-zt} E[e^{-lambda V_t(phi+)}] dt assembled from the renewal
/// structure: [(1 - L_tau)/z + L_tau U2] / (1 - e^{-lambda delta} L_theta).
double portfolio_value_double_laplace(double lambda, double z, double delta, double laplace_tau,
                                      double laplace_theta, double u2_transform);

/// Closed form of the same transform for S = sigma B; requires z > sigma^2 lambda^2 / 2.
double bm_portfolio_value_double_laplace(double lambda, double z, double delta, double sigma);

} // namespace exkit
