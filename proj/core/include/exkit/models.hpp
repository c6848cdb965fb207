#pragma once

#include <map>
#include <string>
#include <variant>

namespace exkit {

struct Brownian {
    double sigma = 1.0;
};

/// dS = alpha (mu - S) dt + gamma dB.
struct OrnsteinUhlenbeck {
    double alpha = 1.0;
    double mu = 0.0;
    double gamma = 1.0;

    [[nodiscard]] double stationary_variance() const noexcept { return gamma * gamma / (2.0 * alpha); }
    [[nodiscard]] double stationary_stddev() const;
};

struct FractionalBrownian {
    double hurst = 0.5;
};

/// dS = -lambda S dt + gamma dB^H.
struct FractionalOU {
    double lambda = 1.0;
    double gamma = 1.0;
    double hurst = 0.5;
};

using DiffusionModel = std::variant<Brownian, OrnsteinUhlenbeck, FractionalBrownian, FractionalOU>;

/// Throws InvalidParam on out-of-range coefficients. Zero volatility is
/// accepted (deterministic paths); analytics impose strict positivity.
void validate(const DiffusionModel& model);

std::string model_name(const DiffusionModel& model);
std::map<std::string, double> model_parameters(const DiffusionModel& model);

/// Builds a model from its name ("bm", "ou", "fbm", "fou") and named
/// coefficients; unknown or missing keys raise InvalidParam.
DiffusionModel make_model(const std::string& name, const std::map<std::string, double>& params);

} // namespace exkit
