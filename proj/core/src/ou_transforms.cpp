#include "exkit/ou_transforms.hpp"

#include "exkit/error.hpp"
#include "exkit/quadrature.hpp"
#include "exkit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace exkit {
namespace {

void check_ou(const OrnsteinUhlenbeck& m)
{
    validate(m);
    if (!(m.gamma > 0.0)) fail(ErrorCode::InvalidParam, "OU: gamma must be > 0");
}

double log_add(double a, double b)
{
    const double hi = std::max(a, b);
    if (hi == -std::numeric_limits<double>::infinity()) return hi;
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// log int_0^inf u^{nu-1} exp(z u - u^2/2) du.
double log_phi_integral(double nu, double z)
{
    // (0, 1]: for small nu split off the 1/nu pole, for nu < 1 substitute
    // w = u^nu, which absorbs the singular weight.
    const double c = std::clamp(z, 0.0, 1.0);
    const double head_peak = z * c - 0.5 * c * c;
    double head = 0.0;
    if (nu < 0.05) {
        const double rest = integrate(
            [nu, z](double u) { return u == 0.0 ? 0.0 : std::pow(u, nu - 1.0) * std::expm1(z * u - 0.5 * u * u); },
            0.0, 1.0, 1e-13);
        head = std::exp(-head_peak) * (1.0 / nu + rest);
    } else if (nu < 1.0) {
        head = integrate(
                   [nu, z, head_peak](double w) {
                       const double u = std::pow(w, 1.0 / nu);
                       return std::exp(z * u - 0.5 * u * u - head_peak);
                   },
                   0.0, 1.0, 1e-12) /
               nu;
    } else {
        head = integrate(
            [nu, z, head_peak](double u) {
                if (u == 0.0) return nu == 1.0 ? std::exp(-head_peak) : 0.0;
                return std::exp((nu - 1.0) * std::log(u) + z * u - 0.5 * u * u - head_peak);
            },
            0.0, 1.0, 1e-12);
    }

    // [1, inf): log integrand is concave; integrate out to 40 units past its peak.
    const double disc = z * z + 4.0 * (nu - 1.0);
    double mode = disc >= 0.0 ? 0.5 * (z + std::sqrt(disc)) : 1.0;
    mode = std::max(mode, 1.0);
    auto log_g = [nu, z](double u) { return (nu - 1.0) * std::log(u) + z * u - 0.5 * u * u; };
    const double tail_peak = log_g(mode);
    const double upper = mode + 40.0;
    double tail = 0.0;
    if (mode > 1.0) {
        tail = integrate([&](double u) { return std::exp(log_g(u) - tail_peak); }, 1.0, mode, 1e-12) +
               integrate([&](double u) { return std::exp(log_g(u) - tail_peak); }, mode, upper, 1e-12);
    } else {
        tail = integrate([&](double u) { return std::exp(log_g(u) - tail_peak); }, 1.0, upper, 1e-12);
    }
    return log_add(head_peak + std::log(head), tail_peak + std::log(tail));
}

} // namespace

double log_ou_phi(double lambda, double x, const OrnsteinUhlenbeck& model, PhiBranch branch)
{
    check_ou(model);
    if (!(lambda > 0.0) || !std::isfinite(lambda)) fail(ErrorCode::InvalidParam, "lambda must be > 0");
    const double beta = std::sqrt(2.0 * model.alpha) / model.gamma;
    const double z = (branch == PhiBranch::increasing ? 1.0 : -1.0) * beta * (x - model.mu);
    return log_phi_integral(lambda / model.alpha, z);
}

double ou_phi(double lambda, double x, const OrnsteinUhlenbeck& model, PhiBranch branch)
{
    return std::exp(log_ou_phi(lambda, x, model, branch));
}

double ou_waiting_mgf(double lambda, double delta, const OrnsteinUhlenbeck& model)
{
    if (lambda == 0.0) return 1.0;
    return std::exp(log_ou_phi(lambda, 0.0, model, PhiBranch::increasing) -
                    log_ou_phi(lambda, delta, model, PhiBranch::increasing));
}

double ou_holding_mgf(double lambda, double delta, const OrnsteinUhlenbeck& model)
{
    if (lambda == 0.0) return 1.0;
    return std::exp(log_ou_phi(lambda, delta, model, PhiBranch::decreasing) -
                    log_ou_phi(lambda, 0.0, model, PhiBranch::decreasing));
}

double log_ou_hitting_density(double t, double delta, double alpha, double gamma)
{
    if (!(alpha > 0.0 && gamma > 0.0 && delta > 0.0)) fail(ErrorCode::InvalidParam, "need alpha, gamma, delta > 0");
    if (!(t > 0.0)) return -std::numeric_limits<double>::infinity();
    const double y = alpha * t;
    // log sinh(y), and e^{-y} / sinh(y) = 2 / expm1(2y).
    const double log_sinh = y > 1.0 ? y + std::log1p(-std::exp(-2.0 * y)) - std::numbers::ln2 : std::log(std::sinh(y));
    const double ratio = 2.0 / std::expm1(2.0 * y);
    return std::log(delta / (gamma * std::sqrt(2.0 * std::numbers::pi))) -
           delta * delta * alpha * ratio / (2.0 * gamma * gamma) + 0.5 * y +
           1.5 * (std::log(alpha) - log_sinh);
}

double ou_hitting_density(double t, double delta, double alpha, double gamma, double mu)
{
    if (mu != 0.0) fail(ErrorCode::InvalidParam, "the hitting density formula holds for mu = 0 only");
    return std::exp(log_ou_hitting_density(t, delta, alpha, gamma));
}

namespace {

// (2 / gamma^2) sqrt(pi / c) int_{lo}^{hi} e^{c (y - mu)^2} Phi(sign sqrt(2c) (y - mu)) dy.
double speed_measure_mean(double lo, double hi, const OrnsteinUhlenbeck& m, double sign)
{
    const double c = m.alpha / (m.gamma * m.gamma);
    const double r = std::sqrt(2.0 * c);
    const double mu = m.mu;
    const double integral = integrate(
        [=](double y) {
            const double v = r * (y - mu);
            return std::exp(0.5 * v * v + log_normal_tail(-sign * v));
        },
        lo, hi, 1e-12);
    return 2.0 / (m.gamma * m.gamma) * std::sqrt(std::numbers::pi / c) * integral;
}

} // namespace

double ou_mean_waiting(double delta, const OrnsteinUhlenbeck& model)
{
    check_ou(model);
    if (!(delta > 0.0)) fail(ErrorCode::InvalidParam, "delta must be > 0");
    return speed_measure_mean(0.0, delta, model, 1.0);
}

double ou_mean_holding(double delta, const OrnsteinUhlenbeck& model)
{
    check_ou(model);
    if (!(delta > 0.0)) fail(ErrorCode::InvalidParam, "delta must be > 0");
    return speed_measure_mean(0.0, delta, model, -1.0);
}

} // namespace exkit
