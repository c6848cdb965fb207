#pragma once

#include "exkit/crossings.hpp"
#include "exkit/path.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace exkit {

/// One up-then-down unit of a path: from the cycle start, up to the first
/// sample >= delta (tau), then down to the first sample <= 0 (theta).
/// Samples keep their absolute times and raw values; both segments share the
/// tau sample.
struct DeltaExcursion {
    double delta = 0.0;
    std::vector<double> times;
    std::vector<double> values;
    /// Offset of the delta crossing; equals values.size() if delta was never reached.
    std::size_t tau_index = 0;
    /// Offset of the last sample <= 0 before tau.
    std::size_t last_exit_index = 0;
    bool complete = false;

    [[nodiscard]] bool reached_delta() const noexcept { return tau_index < values.size(); }
    [[nodiscard]] std::span<const double> up_segment() const;
    [[nodiscard]] std::span<const double> down_segment() const;
    [[nodiscard]] double duration() const noexcept { return times.back() - times.front(); }
    [[nodiscard]] double start_time() const noexcept { return times.front(); }
    [[nodiscard]] double max_height() const;
    /// Time from cycle start to tau (waiting part); the whole duration if never reached.
    [[nodiscard]] double waiting_duration() const;
    /// Time from tau to the end of the excursion; 0 if never reached.
    [[nodiscard]] double holding_duration() const;
};

struct DecomposeOptions {
    /// Subtract the first value instead of rejecting a path that does not start at 0.
    bool auto_shift = false;
    double start_tolerance = 1e-12;
};

/// Complete delta-excursions in path order, followed by the trailing
/// remainder (complete = false) when it spans more than one sample.
std::vector<DeltaExcursion> decompose(const Path& path, double delta, const DecomposeOptions& options = {});

/// Concatenates excursions end to start; the later excursion supplies the
/// joint sample. Time stamps are reused verbatim when they already line up and
/// shifted to the running end otherwise.
Path reconstruct(std::span<const DeltaExcursion> excursions);

struct LastExitSplit {
    /// Samples 0..split (0 -> 0, never reaching delta). Empty when split is 0.
    std::vector<double> prefix;
    /// Samples split..end: the excursion from the last zero-touch.
    std::vector<double> final_excursion;
    std::size_t split_index = 0;
    /// Time from the excursion start to the split (T).
    double split_time = 0.0;
};

LastExitSplit last_exit_split(const DeltaExcursion& excursion);

enum class SplitOrder { positive_first, negative_first };

/// Outer piece [first, last] (inclusive sample indices) and the inner
/// boundaries found inside it when split by the opposite threshold.
struct NestedPiece {
    std::size_t first = 0;
    std::size_t last = 0;
    bool complete = false;
    std::vector<std::size_t> inner_boundaries;
};

struct TwoSidedDecomposition {
    double delta = 0.0;
    SplitOrder order = SplitOrder::positive_first;
    std::vector<NestedPiece> pieces;

    /// Sorted union of outer and inner cycle-end indices.
    [[nodiscard]] std::vector<std::size_t> boundaries() const;
};

TwoSidedDecomposition decompose_two_sided(const Path& path, double delta,
                                          SplitOrder order = SplitOrder::positive_first,
                                          const DecomposeOptions& options = {});

} // namespace exkit
