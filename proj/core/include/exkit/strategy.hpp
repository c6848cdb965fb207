#pragma once

#include "exkit/crossings.hpp"
#include "exkit/path.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace exkit {

enum class Side { short_only, long_only, two_sided };

struct StrategySpec {
    Side side = Side::short_only;
    double delta = 0.0;
    /// Exit once the signal moves M beyond the entry threshold.
    std::optional<double> stop_loss;
    double initial_value = 0.0;

    void validate() const;
};

/// One trade: entry at tau, exit at min(theta, kappa).
struct TradeCycle {
    Polarity leg = Polarity::upper;
    std::size_t start_index = 0;  ///< theta of the previous cycle (0 for the first)
    std::size_t entry_index = 0;  ///< tau
    std::size_t exit_index = 0;   ///< where the position is closed
    std::size_t theta_index = 0;  ///< return to the reference; path size if not reached
    bool complete = false;        ///< theta reached inside the path
    bool stopped_out = false;
    double waiting_duration = 0.0;
    double holding_duration = 0.0;
    double max_loss = 0.0;
    double profit = 0.0;
};

using TradeCycleTable = std::vector<TradeCycle>;

struct StrategyLedger {
    double initial_value = 0.0;
    std::vector<double> times;
    std::vector<int> positions;
    std::vector<double> value;
    std::vector<double> realized;
    std::vector<double> drawdown;
    /// Every closed trade, both legs, ordered by entry.
    TradeCycleTable trades;
};

/// Positions in {-1, 0, +1}; positions[i] applies to the increment i -> i+1.
/// The crossings fix the leg they describe; the other leg of a two-sided
/// strategy is detected from the path.
std::vector<int> build_positions(const CrossingTimes& crossings, const StrategySpec& spec, const Path& path);
std::vector<int> build_positions(const Path& path, const StrategySpec& spec);

/// V_i = V0 + sum_{j < i} positions[j] * (S_{j+1} - S_j).
std::vector<double> portfolio_value(const Path& path, std::span<const int> positions, double initial_value);

std::vector<double> drawdown_series(std::span<const double> value);

StrategyLedger run_strategy(const Path& path, const StrategySpec& spec);

struct RealizedSplit {
    std::vector<double> realized;
    std::vector<double> mark_to_market;
};

/// Realized P&L booked at each trade exit; mark-to-market is the rest of V - V0.
RealizedSplit realized_profit_split(const StrategyLedger& ledger);

/// max_t (V0 - V_t), floored at 0.
double worst_loss(const StrategyLedger& ledger);

/// Completed cycles only.
TradeCycleTable cycle_table(const CrossingTimes& crossings, const Path& path, const StrategySpec& spec);

} // namespace exkit
