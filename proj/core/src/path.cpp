#include "exkit/path.hpp"

#include "exkit/error.hpp"

#include <cmath>
#include <numeric>

namespace exkit {

Path::Path(std::vector<double> times, std::vector<double> values, std::string label)
    : times_(std::move(times)), values_(std::move(values)), label_(std::move(label))
{
    if (times_.size() != values_.size())
        fail(ErrorCode::LengthMismatch, "times and values differ in length");
    if (values_.size() < 2) fail(ErrorCode::EmptyPath, "a path needs at least two samples");
    check_finite(times_);
    check_finite(values_);
    for (std::size_t i = 1; i < times_.size(); ++i) {
        if (!(times_[i] > times_[i - 1]))
            fail(ErrorCode::NonMonotoneTime,
                 "time stamps must be strictly increasing (row " + std::to_string(i) + ")");
    }
}

Path Path::uniform(std::vector<double> values, double dt, double t0, std::string label)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorCode::InvalidParam, "dt must be positive");
    std::vector<double> times(values.size());
    for (std::size_t i = 0; i < times.size(); ++i) times[i] = t0 + static_cast<double>(i) * dt;
    return Path(std::move(times), std::move(values), std::move(label));
}

Path Path::shifted_to_zero() const
{
    std::vector<double> v(values_);
    const double v0 = v.front();
    for (double& x : v) x -= v0;
    return Path(times_, std::move(v), label_);
}

Path Path::negated() const
{
    std::vector<double> v(values_);
    for (double& x : v) x = -x;
    return Path(times_, std::move(v), label_);
}

void check_finite(std::span<const double> values)
{
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            fail(ErrorCode::NonFiniteValue, "non-finite sample at index " + std::to_string(i));
    }
}

double sample_mean(std::span<const double> x)
{
    if (x.empty()) fail(ErrorCode::InsufficientData, "mean of an empty sample");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x)
{
    if (x.size() < 2) fail(ErrorCode::InsufficientData, "variance needs two observations");
    const double m = sample_mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return ss / static_cast<double>(x.size() - 1);
}

double sample_stddev(std::span<const double> x) { return std::sqrt(sample_variance(x)); }

} // namespace exkit
