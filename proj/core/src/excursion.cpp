#include "exkit/excursion.hpp"

#include "exkit/error.hpp"

#include <algorithm>
#include <cmath>

namespace exkit {

std::span<const double> DeltaExcursion::up_segment() const
{
    const std::size_t end = reached_delta() ? tau_index + 1 : values.size();
    return std::span<const double>(values).first(end);
}

std::span<const double> DeltaExcursion::down_segment() const
{
    if (!reached_delta()) return {};
    return std::span<const double>(values).subspan(tau_index);
}

double DeltaExcursion::max_height() const { return *std::max_element(values.begin(), values.end()); }

double DeltaExcursion::waiting_duration() const
{
    if (!reached_delta()) return duration();
    return times[tau_index] - times.front();
}

double DeltaExcursion::holding_duration() const
{
    if (!reached_delta()) return 0.0;
    return times.back() - times[tau_index];
}

namespace {

std::vector<double> checked_values(const Path& path, const DecomposeOptions& options)
{
    std::vector<double> v(path.values().begin(), path.values().end());
    if (std::abs(v.front()) > options.start_tolerance) {
        if (!options.auto_shift)
            fail(ErrorCode::StartNotAtReference,
                 "path starts at " + std::to_string(v.front()) + " instead of 0");
        const double v0 = v.front();
        for (double& x : v) x -= v0;
    }
    return v;
}

DeltaExcursion slice(std::span<const double> times, std::span<const double> values, double delta,
                     std::size_t first, std::size_t last, std::size_t tau, bool complete)
{
    DeltaExcursion e;
    e.delta = delta;
    e.times.assign(times.begin() + first, times.begin() + last + 1);
    e.values.assign(values.begin() + first, values.begin() + last + 1);
    e.complete = complete;
    e.tau_index = tau >= first && tau <= last ? tau - first : e.values.size();
    const std::size_t scan_end = std::min(e.tau_index, e.values.size());
    for (std::size_t j = 0; j < scan_end; ++j) {
        if (e.values[j] <= 0.0) e.last_exit_index = j;
    }
    return e;
}

} // namespace

std::vector<DeltaExcursion> decompose(const Path& path, double delta, const DecomposeOptions& options)
{
    const std::vector<double> values = checked_values(path, options);
    const CrossingTimes c = detect_crossings(values, delta);
    const auto times = path.times();

    std::vector<DeltaExcursion> out;
    out.reserve(c.complete_cycles() + 1);
    for (std::size_t k = 0; k < c.complete_cycles(); ++k)
        out.push_back(slice(times, values, delta, c.cycle_start(k), c.theta_plus[k], c.tau_plus[k], true));

    const std::size_t tail = c.cycle_start(c.complete_cycles());
    if (tail + 1 < values.size()) {
        const std::size_t tau = c.open_at_end() ? c.tau_plus.back() : values.size();
        out.push_back(slice(times, values, delta, tail, values.size() - 1, tau, false));
    }
    return out;
}

Path reconstruct(std::span<const DeltaExcursion> excursions)
{
    if (excursions.empty()) fail(ErrorCode::InvalidParam, "nothing to reconstruct");
    std::size_t total = 1;
    for (std::size_t k = 0; k < excursions.size(); ++k) {
        const auto& e = excursions[k];
        if (e.values.size() < 2 || e.times.size() != e.values.size())
            fail(ErrorCode::InvalidParam, "excursion " + std::to_string(k) + " is malformed");
        if (!e.complete && k + 1 < excursions.size())
            fail(ErrorCode::IncompleteInterior, "excursion " + std::to_string(k) + " is incomplete");
        total += e.values.size() - 1;
    }

    std::vector<double> times;
    std::vector<double> values;
    times.reserve(total);
    values.reserve(total);
    times.assign(excursions.front().times.begin(), excursions.front().times.end());
    values.assign(excursions.front().values.begin(), excursions.front().values.end());

    for (std::size_t k = 1; k < excursions.size(); ++k) {
        const auto& e = excursions[k];
        values.back() = e.values.front();
        values.insert(values.end(), e.values.begin() + 1, e.values.end());
        const double end = times.back();
        if (e.times.front() == end) {
            times.insert(times.end(), e.times.begin() + 1, e.times.end());
        } else {
            const double offset = end - e.times.front();
            for (std::size_t j = 1; j < e.times.size(); ++j) times.push_back(e.times[j] + offset);
        }
    }
    return Path(std::move(times), std::move(values));
}

LastExitSplit last_exit_split(const DeltaExcursion& excursion)
{
    if (!excursion.complete || !excursion.reached_delta())
        fail(ErrorCode::InvalidParam, "last-exit split needs a complete excursion");
    const std::size_t s = excursion.last_exit_index;
    LastExitSplit out;
    out.split_index = s;
    out.split_time = excursion.times[s] - excursion.times.front();
    if (s > 0) out.prefix.assign(excursion.values.begin(), excursion.values.begin() + s + 1);
    out.final_excursion.assign(excursion.values.begin() + s, excursion.values.end());
    return out;
}

std::vector<std::size_t> TwoSidedDecomposition::boundaries() const
{
    std::vector<std::size_t> out;
    for (const auto& p : pieces) {
        if (p.complete) out.push_back(p.last);
        out.insert(out.end(), p.inner_boundaries.begin(), p.inner_boundaries.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

TwoSidedDecomposition decompose_two_sided(const Path& path, double delta, SplitOrder order,
                                          const DecomposeOptions& options)
{
    const std::vector<double> values = checked_values(path, options);
    const Polarity outer = order == SplitOrder::positive_first ? Polarity::upper : Polarity::lower;
    const Polarity inner = outer == Polarity::upper ? Polarity::lower : Polarity::upper;
    const CrossingTimes c = detect_crossings(values, delta, outer);

    TwoSidedDecomposition out;
    out.delta = delta;
    out.order = order;
    auto add_piece = [&](std::size_t first, std::size_t last, bool complete) {
        NestedPiece piece{first, last, complete, {}};
        if (last > first) {
            const auto sub = std::span<const double>(values).subspan(first, last - first + 1);
            for (std::size_t idx : detect_crossings(sub, delta, inner).theta_plus)
                piece.inner_boundaries.push_back(first + idx);
        }
        out.pieces.push_back(std::move(piece));
    };
    for (std::size_t k = 0; k < c.complete_cycles(); ++k) add_piece(c.cycle_start(k), c.theta_plus[k], true);
    const std::size_t tail = c.cycle_start(c.complete_cycles());
    if (tail + 1 < values.size()) add_piece(tail, values.size() - 1, false);
    return out;
}

} // namespace exkit
