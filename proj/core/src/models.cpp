#include "exkit/models.hpp"

#include "exkit/error.hpp"

#include <cmath>
#include <set>

namespace exkit {

double OrnsteinUhlenbeck::stationary_stddev() const { return std::sqrt(stationary_variance()); }

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check(bool ok, const char* what)
{
    if (!ok) fail(ErrorCode::InvalidParam, what);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }
bool finite_pos(double x) { return std::isfinite(x) && x > 0.0; }

} // namespace

void validate(const DiffusionModel& model)
{
    std::visit(overloaded{
                   [](const Brownian& m) { check(finite_nonneg(m.sigma), "BM: sigma must be >= 0"); },
                   [](const OrnsteinUhlenbeck& m) {
                       check(finite_pos(m.alpha), "OU: alpha must be > 0");
                       check(std::isfinite(m.mu), "OU: mu must be finite");
                       check(finite_nonneg(m.gamma), "OU: gamma must be >= 0");
                   },
                   [](const FractionalBrownian& m) { check(m.hurst > 0.0 && m.hurst < 1.0, "fBM: H must be in (0,1)"); },
                   [](const FractionalOU& m) {
                       check(finite_pos(m.lambda), "fOU: lambda must be > 0");
                       check(finite_nonneg(m.gamma), "fOU: gamma must be >= 0");
                       check(m.hurst > 0.0 && m.hurst < 1.0, "fOU: H must be in (0,1)");
                   },
               },
               model);
}

std::string model_name(const DiffusionModel& model)
{
    return std::visit(overloaded{
                          [](const Brownian&) { return std::string("bm"); },
                          [](const OrnsteinUhlenbeck&) { return std::string("ou"); },
                          [](const FractionalBrownian&) { return std::string("fbm"); },
                          [](const FractionalOU&) { return std::string("fou"); },
                      },
                      model);
}

std::map<std::string, double> model_parameters(const DiffusionModel& model)
{
    return std::visit(overloaded{
                          [](const Brownian& m) { return std::map<std::string, double>{{"sigma", m.sigma}}; },
                          [](const OrnsteinUhlenbeck& m) {
                              return std::map<std::string, double>{{"alpha", m.alpha}, {"mu", m.mu}, {"gamma", m.gamma}};
                          },
                          [](const FractionalBrownian& m) { return std::map<std::string, double>{{"H", m.hurst}}; },
                          [](const FractionalOU& m) {
                              return std::map<std::string, double>{{"lambda", m.lambda}, {"gamma", m.gamma}, {"H", m.hurst}};
                          },
                      },
                      model);
}

DiffusionModel make_model(const std::string& name, const std::map<std::string, double>& params)
{
    auto take = [&](std::initializer_list<const char*> required, std::initializer_list<const char*> optional) {
        std::set<std::string> allowed(required.begin(), required.end());
        allowed.insert(optional.begin(), optional.end());
        for (const auto& [k, v] : params) {
            if (!allowed.count(k)) fail(ErrorCode::InvalidParam, "model '" + name + "' has no parameter '" + k + "'");
        }
        for (const char* k : required) {
            if (!params.count(k)) fail(ErrorCode::InvalidParam, "model '" + name + "' needs parameter '" + k + "'");
        }
    };
    auto get = [&](const char* k, double fallback) {
        auto it = params.find(k);
        return it == params.end() ? fallback : it->second;
    };

    DiffusionModel model;
    if (name == "bm") {
        take({}, {"sigma"});
        model = Brownian{get("sigma", 1.0)};
    } else if (name == "ou") {
        take({"alpha", "gamma"}, {"mu"});
        model = OrnsteinUhlenbeck{get("alpha", 0.0), get("mu", 0.0), get("gamma", 0.0)};
    } else if (name == "fbm") {
        take({"H"}, {});
        model = FractionalBrownian{get("H", 0.0)};
    } else if (name == "fou") {
        take({"lambda", "gamma", "H"}, {});
        model = FractionalOU{get("lambda", 0.0), get("gamma", 0.0), get("H", 0.0)};
    } else {
        fail(ErrorCode::InvalidParam, "unknown model '" + name + "'");
    }
    validate(model);
    return model;
}

} // namespace exkit
