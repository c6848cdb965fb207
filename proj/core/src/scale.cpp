#include "exkit/scale.hpp"

#include "exkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>

namespace exkit {

ScaleFunction::ScaleFunction(const DiffusionModel& model)
{
    if (const auto* bm = std::get_if<Brownian>(&model)) {
        if (!(bm->sigma > 0.0)) fail(ErrorCode::InvalidParam, "BM: sigma must be > 0");
        kind_ = Kind::brownian;
        sigma2_ = bm->sigma * bm->sigma;
    } else if (const auto* ou = std::get_if<OrnsteinUhlenbeck>(&model)) {
        validate(model);
        if (!(ou->gamma > 0.0)) fail(ErrorCode::InvalidParam, "OU: gamma must be > 0");
        kind_ = Kind::ornstein_uhlenbeck;
        ou_c_ = ou->alpha / (ou->gamma * ou->gamma);
        ou_mu_ = ou->mu;
        sigma2_ = ou->gamma * ou->gamma;
    } else {
        fail(ErrorCode::InvalidParam, "scale function needs a Markov diffusion (bm or ou)");
    }
}

ScaleFunction::ScaleFunction(GeneralDiffusion diffusion) : kind_(Kind::general), general_(std::move(diffusion))
{
    if (!general_.drift || !general_.variance) fail(ErrorCode::InvalidParam, "drift and variance are required");
}

double ScaleFunction::variance(double x) const
{
    if (kind_ != Kind::general) return sigma2_;
    const double a = general_.variance(x);
    if (!(a > 0.0)) fail(ErrorCode::InvalidParam, "diffusion variance must be > 0");
    return a;
}

double ScaleFunction::log_derivative(double x) const
{
    switch (kind_) {
    case Kind::brownian: return 0.0;
    case Kind::ornstein_uhlenbeck: return ou_c_ * (x * x - 2.0 * ou_mu_ * x);
    case Kind::general: break;
    }
    return -integrate([this](double y) { return 2.0 * general_.drift(y) / variance(y); }, 0.0, x);
}

double ScaleFunction::derivative(double x) const { return std::exp(log_derivative(x)); }

double ScaleFunction::log_ou_integral(double x) const
{
    // log int_0^x exp(q(y)) dy for x > 0; q is convex so its max sits at an endpoint.
    const double qx = log_derivative(x);
    const double peak = std::max(0.0, qx);
    const double c = ou_c_, mu = ou_mu_;
    const double integral = integrate(
        [c, mu, peak](double y) { return std::exp(c * (y * y - 2.0 * mu * y) - peak); }, 0.0, x, 1e-12);
    return peak + std::log(integral);
}

double ScaleFunction::general_value(double x) const
{
    return integrate([this](double y) { return derivative(y); }, 0.0, x);
}

double ScaleFunction::operator()(double x) const
{
    if (x == 0.0) return 0.0;
    switch (kind_) {
    case Kind::brownian: return x;
    case Kind::ornstein_uhlenbeck: {
        if (x > 0.0) return std::exp(log_ou_integral(x));
        // s(-x) for the mirrored process, which is OU with mean -mu.
        const double c = ou_c_, mu = ou_mu_;
        return -integrate([c, mu](double y) { return std::exp(c * (y * y - 2.0 * mu * y)); }, x, 0.0, 1e-12);
    }
    case Kind::general: break;
    }
    return general_value(x);
}

double ScaleFunction::log_value(double x) const
{
    if (!(x > 0.0)) fail(ErrorCode::DomainViolation, "log s(x) needs x > 0");
    switch (kind_) {
    case Kind::brownian: return std::log(x);
    case Kind::ornstein_uhlenbeck: return log_ou_integral(x);
    case Kind::general: break;
    }
    const double s = general_value(x);
    if (!(s > 0.0)) fail(ErrorCode::QuadratureFailure, "scale function is not increasing");
    return std::log(s);
}

double ScaleFunction::speed_density(double x) const { return 2.0 / (derivative(x) * variance(x)); }

} // namespace exkit
