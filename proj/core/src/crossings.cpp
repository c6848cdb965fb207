#include "exkit/crossings.hpp"

#include "exkit/error.hpp"

#include <cmath>

namespace exkit {
namespace {

void check_input(std::span<const double> values, double delta)
{
    if (values.size() < 2) fail(ErrorCode::EmptyPath, "a path needs at least two samples");
    if (!(delta > 0.0) || !std::isfinite(delta)) fail(ErrorCode::InvalidParam, "delta must be positive");
    check_finite(values);
}

// Calls on_tau / on_theta in path order. Lower polarity flips the sign.
template <class OnTau, class OnTheta>
void scan(std::span<const double> values, double delta, Polarity polarity, OnTau on_tau, OnTheta on_theta)
{
    const double sign = polarity == Polarity::upper ? 1.0 : -1.0;
    bool holding = false;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double x = sign * values[i];
        if (!holding) {
            if (x >= delta) {
                holding = true;
                on_tau(i);
            }
        } else if (x <= 0.0) {
            holding = false;
            on_theta(i);
        }
    }
}

} // namespace

CrossingTimes detect_crossings(std::span<const double> values, double delta, Polarity polarity)
{
    check_input(values, delta);
    CrossingTimes out;
    out.delta = delta;
    out.polarity = polarity;
    scan(values, delta, polarity,
         [&](std::size_t i) { out.tau_plus.push_back(i); },
         [&](std::size_t i) { out.theta_plus.push_back(i); });
    return out;
}

CrossingTimes detect_crossings(const Path& path, double delta, Polarity polarity)
{
    return detect_crossings(path.values(), delta, polarity);
}

std::size_t count_crossings(std::span<const double> values, double delta, Polarity polarity)
{
    check_input(values, delta);
    std::size_t d = 0;
    scan(values, delta, polarity, [](std::size_t) {}, [&](std::size_t) { ++d; });
    return d;
}

} // namespace exkit
