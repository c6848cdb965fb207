#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace exkit {

/// Sampled real-valued trajectory. Times are strictly increasing, length >= 2.
class Path {
public:
    Path(std::vector<double> times, std::vector<double> values, std::string label = {});

    /// Samples at t0, t0 + dt, ..., one per value.
    static Path uniform(std::vector<double> values, double dt, double t0 = 0.0, std::string label = {});

    [[nodiscard]] std::span<const double> times() const noexcept { return times_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double time(std::size_t i) const { return times_[i]; }
    [[nodiscard]] double value(std::size_t i) const { return values_[i]; }
    [[nodiscard]] double span() const noexcept { return times_.back() - times_.front(); }

    void set_label(std::string label) { label_ = std::move(label); }

    /// Copy with every value shifted by -values()[0].
    [[nodiscard]] Path shifted_to_zero() const;
    [[nodiscard]] Path negated() const;

    /// Sample-exact comparison of times and values; the label is ignored.
    friend bool operator==(const Path& a, const Path& b) noexcept
    {
        return a.times_ == b.times_ && a.values_ == b.values_;
    }

private:
    std::vector<double> times_;
    std::vector<double> values_;
    std::string label_;
};

/// Throws NonFiniteValue if any value is NaN or infinite.
void check_finite(std::span<const double> values);

double sample_mean(std::span<const double> x);
/// Unbiased sample variance (n - 1 denominator).
double sample_variance(std::span<const double> x);
double sample_stddev(std::span<const double> x);

} // namespace exkit
