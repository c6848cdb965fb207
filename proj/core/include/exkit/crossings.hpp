#pragma once

#include "exkit/path.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace exkit {

/// Which side of the reference the threshold lives on. `lower` tracks the
/// crossings of -S, i.e. entries at S <= -delta and exits at S >= 0.
enum class Polarity { upper, lower };

/// Sample indices of threshold entries (tau) and returns to the reference (theta).
///
/// tau_plus[k] < theta_plus[k] < tau_plus[k + 1]. When the path ends with an
/// open cycle, tau_plus holds one more entry than theta_plus.
struct CrossingTimes {
    double delta = 0.0;
    Polarity polarity = Polarity::upper;
    std::vector<std::size_t> tau_plus;
    std::vector<std::size_t> theta_plus;

    /// D^delta: number of completed cycles.
    [[nodiscard]] std::size_t complete_cycles() const noexcept { return theta_plus.size(); }
    [[nodiscard]] bool open_at_end() const noexcept { return tau_plus.size() > theta_plus.size(); }
    /// Index where cycle k (0-based) begins: 0 for the first, theta_plus[k-1] after that.
    [[nodiscard]] std::size_t cycle_start(std::size_t k) const { return k == 0 ? 0 : theta_plus[k - 1]; }
};

/// Discrete convention: tau is the first sample >= delta after the previous
/// theta, theta the first later sample <= 0. No interpolation.
CrossingTimes detect_crossings(std::span<const double> values, double delta,
                               Polarity polarity = Polarity::upper);
CrossingTimes detect_crossings(const Path& path, double delta, Polarity polarity = Polarity::upper);

/// D^delta alone, without materializing the index vectors.
std::size_t count_crossings(std::span<const double> values, double delta,
                            Polarity polarity = Polarity::upper);

} // namespace exkit
