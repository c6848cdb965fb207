#include "exkit/brownian.hpp"

#include "exkit/error.hpp"

#include <cmath>
#include <limits>

namespace exkit {

double brownian_excursion_measure_laplace(double lambda, double delta)
{
    if (!(lambda > 0.0) || !(delta > 0.0)) fail(ErrorCode::InvalidParam, "lambda and delta must be > 0");
    const double r = std::sqrt(2.0 * lambda);
    return r / std::expm1(2.0 * r * delta);
}

double brownian_excursion_complement_laplace(double lambda)
{
    if (!(lambda > 0.0)) fail(ErrorCode::InvalidParam, "lambda must be > 0");
    return std::sqrt(2.0 * lambda);
}

double mgf_from_excursion_measure(double reaching_mass, double complement_mass)
{
    return reaching_mass / (reaching_mass + complement_mass);
}

BrownianCycleLaws::BrownianCycleLaws(double sigma, double delta) : sigma_(sigma), delta_(delta)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma)) fail(ErrorCode::InvalidParam, "sigma must be > 0");
    if (!(delta > 0.0) || !std::isfinite(delta)) fail(ErrorCode::InvalidParam, "delta must be > 0");
}

double BrownianCycleLaws::sample_duration(RandomStream& rng) const
{
    const double z1 = rng.normal();
    const double z2 = rng.normal();
    const double scale = delta_ * delta_ / (sigma_ * sigma_);
    return scale * (1.0 / (z1 * z1) + 1.0 / (z2 * z2));
}

double BrownianCycleLaws::waiting_survival(double t) const
{
    if (t <= 0.0) return 1.0;
    return std::erf(delta_ / (sigma_ * std::sqrt(2.0 * t)));
}

double BrownianCycleLaws::waiting_cdf(double t) const
{
    if (t <= 0.0) return 0.0;
    return std::erfc(delta_ / (sigma_ * std::sqrt(2.0 * t)));
}

double BrownianCycleLaws::cycle_cdf(double t) const
{
    if (t <= 0.0) return 0.0;
    return std::erfc(2.0 * delta_ / (sigma_ * std::sqrt(2.0 * t)));
}

double BrownianCycleLaws::worst_loss_survival(double M) const
{
    if (M <= 0.0) return 1.0;
    if (std::isinf(M)) return 0.0;
    return delta_ / (M + delta_);
}

double BrownianCycleLaws::expected_max_loss(double M) const
{
    if (!(M > 0.0)) fail(ErrorCode::InvalidParam, "M must be > 0");
    if (std::isinf(M)) return std::numeric_limits<double>::infinity();
    return delta_ * std::log1p(M / delta_);
}

double BrownianCycleLaws::cycle_mgf(double lambda) const
{
    if (lambda < 0.0) fail(ErrorCode::InvalidParam, "lambda must be >= 0");
    return std::exp(-2.0 * std::sqrt(2.0 * lambda) * delta_ / sigma_);
}

namespace {

void check_transform_args(double z, double delta, double sigma)
{
    if (!(z > 0.0)) fail(ErrorCode::DomainViolation, "z must be > 0");
    if (!(delta > 0.0) || !(sigma > 0.0)) fail(ErrorCode::InvalidParam, "delta and sigma must be > 0");
}

} // namespace

double bm_laplace_tau(double z, double delta, double sigma)
{
    check_transform_args(z, delta, sigma);
    return std::exp(-std::sqrt(2.0 * z) * delta / sigma);
}

double bm_laplace_theta(double z, double delta, double sigma)
{
    check_transform_args(z, delta, sigma);
    return std::exp(-2.0 * std::sqrt(2.0 * z) * delta / sigma);
}

double bm_u2_transform(double lambda, double z, double delta, double sigma)
{
    check_transform_args(z, delta, sigma);
    const double p = 0.5 * sigma * sigma * lambda * lambda;
    if (!(z > p)) fail(ErrorCode::DomainViolation, "need z > sigma^2 lambda^2 / 2");
    const double a = std::sqrt(2.0 * z) * delta / sigma;
    return -std::expm1(-lambda * delta - a) / (z - p);
}

double portfolio_value_double_laplace(double lambda, double z, double delta, double laplace_tau,
                                      double laplace_theta, double u2_transform)
{
    if (!(z > 0.0)) fail(ErrorCode::DomainViolation, "z must be > 0");
    const double first = (1.0 - laplace_tau) / z + laplace_tau * u2_transform;
    return first / (1.0 - std::exp(-lambda * delta) * laplace_theta);
}

double bm_portfolio_value_double_laplace(double lambda, double z, double delta, double sigma)
{
    if (!(delta > 0.0) || !(sigma > 0.0)) fail(ErrorCode::InvalidParam, "delta and sigma must be > 0");
    const double p = 0.5 * sigma * sigma * lambda * lambda;
    if (!(z > p)) fail(ErrorCode::DomainViolation, "need z > sigma^2 lambda^2 / 2");
    const double a = std::sqrt(2.0 * z) * delta / sigma;
    const double ld = lambda * delta;
    const double num = std::exp(ld) * (p - z) - p * std::exp(ld - a) + z * std::exp(-2.0 * a);
    const double den = z * (p - z) * (std::exp(ld) - std::exp(-2.0 * a));
    return num / den;
}

} // namespace exkit
