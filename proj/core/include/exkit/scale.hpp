#pragma once

#include "exkit/models.hpp"
#include "exkit/quadrature.hpp"

namespace exkit {

/// dS = b(S) dt + sqrt(a(S)) dB with a > 0.
struct GeneralDiffusion {
    RealFunction drift;
    RealFunction variance;
};

/// Scale function s with s(0) = 0 and s'(x) = exp(-int_0^x 2b/a).
class ScaleFunction {
public:
    enum class Kind { brownian, ornstein_uhlenbeck, general };

    /// Brownian or Ornstein-Uhlenbeck models; fractional models are rejected.
    explicit ScaleFunction(const DiffusionModel& model);
    explicit ScaleFunction(GeneralDiffusion diffusion);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }

    double operator()(double x) const;
    /// log s(x) for x > 0, stable when s overflows a double.
    [[nodiscard]] double log_value(double x) const;
    [[nodiscard]] double derivative(double x) const;
    [[nodiscard]] double log_derivative(double x) const;
    /// Speed density m(x) = 2 / (s'(x) a(x)).
    [[nodiscard]] double speed_density(double x) const;

private:
    Kind kind_;
    double ou_c_ = 0.0;   // alpha / gamma^2
    double ou_mu_ = 0.0;
    double sigma2_ = 1.0;  // constant diffusion variance (BM, OU)
    GeneralDiffusion general_;

    [[nodiscard]] double log_ou_integral(double x) const;
    [[nodiscard]] double general_value(double x) const;
    [[nodiscard]] double variance(double x) const;
};

} // namespace exkit
