#include "exkit/strategy.hpp"

#include "exkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace exkit {

void StrategySpec::validate() const
{
    if (!(delta > 0.0) || !std::isfinite(delta)) fail(ErrorCode::InvalidParam, "delta must be positive");
    if (stop_loss && !(*stop_loss > 0.0)) fail(ErrorCode::InvalidParam, "stop-loss level must be positive");
    if (!std::isfinite(initial_value)) fail(ErrorCode::InvalidParam, "initial value must be finite");
}

namespace {

bool same_delta(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

int leg_sign(Polarity leg) { return leg == Polarity::upper ? -1 : 1; }

// Trades of one leg; value-dependent fields are filled later.
TradeCycleTable leg_trades(const CrossingTimes& c, const StrategySpec& spec, std::span<const double> s)
{
    const double mirror = c.polarity == Polarity::upper ? 1.0 : -1.0;
    const std::size_t n = s.size();
    TradeCycleTable out;
    out.reserve(c.tau_plus.size());
    for (std::size_t k = 0; k < c.tau_plus.size(); ++k) {
        TradeCycle t;
        t.leg = c.polarity;
        t.start_index = c.cycle_start(k);
        t.entry_index = c.tau_plus[k];
        t.complete = k < c.theta_plus.size();
        t.theta_index = t.complete ? c.theta_plus[k] : n;
        t.exit_index = t.theta_index;
        if (spec.stop_loss) {
            const double stop = spec.delta + *spec.stop_loss;
            for (std::size_t j = t.entry_index + 1; j < t.theta_index; ++j) {
                if (mirror * s[j] >= stop) {
                    t.exit_index = j;
                    t.stopped_out = true;
                    break;
                }
            }
        }
        out.push_back(t);
    }
    return out;
}

std::vector<CrossingTimes> legs_for(const CrossingTimes* given, const StrategySpec& spec, const Path& path)
{
    std::vector<Polarity> wanted;
    if (spec.side != Side::long_only) wanted.push_back(Polarity::upper);
    if (spec.side != Side::short_only) wanted.push_back(Polarity::lower);
    std::vector<CrossingTimes> out;
    for (Polarity p : wanted) {
        if (given && given->polarity == p) {
            out.push_back(*given);
        } else {
            out.push_back(detect_crossings(path, spec.delta, p));
        }
    }
    return out;
}

TradeCycleTable all_trades(const CrossingTimes* given, const StrategySpec& spec, const Path& path)
{
    spec.validate();
    if (given) {
        if (!same_delta(given->delta, spec.delta))
            fail(ErrorCode::MismatchedDelta, "crossings were computed at a different delta");
        if (given->polarity == Polarity::upper && spec.side == Side::long_only)
            fail(ErrorCode::MismatchedDelta, "long-only strategy needs crossings of -S");
        if (given->polarity == Polarity::lower && spec.side == Side::short_only)
            fail(ErrorCode::MismatchedDelta, "short-only strategy needs crossings of S");
    }
    TradeCycleTable out;
    for (const auto& c : legs_for(given, spec, path)) {
        auto t = leg_trades(c, spec, path.values());
        out.insert(out.end(), t.begin(), t.end());
    }
    std::sort(out.begin(), out.end(), [](const TradeCycle& a, const TradeCycle& b) { return a.entry_index < b.entry_index; });
    return out;
}

std::vector<int> positions_from(const TradeCycleTable& trades, std::size_t n)
{
    std::vector<int> pos(n, 0);
    for (const auto& t : trades) {
        for (std::size_t j = t.entry_index; j < t.exit_index && j < n; ++j) pos[j] += leg_sign(t.leg);
    }
    return pos;
}

void fill_trade_values(TradeCycleTable& trades, const Path& path, std::span<const double> value)
{
    const auto times = path.times();
    const std::size_t last = path.size() - 1;
    for (auto& t : trades) {
        const std::size_t exit = std::min(t.exit_index, last);
        const std::size_t theta = std::min(t.theta_index, last);
        t.waiting_duration = times[t.entry_index] - times[t.start_index];
        t.holding_duration = times[theta] - times[t.entry_index];
        const double entry_value = value[t.entry_index];
        double worst = 0.0;
        for (std::size_t j = t.entry_index; j <= exit; ++j) worst = std::max(worst, entry_value - value[j]);
        t.max_loss = worst;
        t.profit = value[theta] - value[t.start_index];
    }
}

} // namespace

std::vector<int> build_positions(const CrossingTimes& crossings, const StrategySpec& spec, const Path& path)
{
    return positions_from(all_trades(&crossings, spec, path), path.size());
}

std::vector<int> build_positions(const Path& path, const StrategySpec& spec)
{
    return positions_from(all_trades(nullptr, spec, path), path.size());
}

std::vector<double> portfolio_value(const Path& path, std::span<const int> positions, double initial_value)
{
    if (positions.size() != path.size()) fail(ErrorCode::LengthMismatch, "positions and path differ in length");
    const auto s = path.values();
    std::vector<double> v(s.size());
    v[0] = initial_value;
    for (std::size_t i = 1; i < s.size(); ++i) v[i] = v[i - 1] + positions[i - 1] * (s[i] - s[i - 1]);
    return v;
}

std::vector<double> drawdown_series(std::span<const double> value)
{
    std::vector<double> dd(value.size());
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < value.size(); ++i) {
        peak = std::max(peak, value[i]);
        dd[i] = peak - value[i];
    }
    return dd;
}

StrategyLedger run_strategy(const Path& path, const StrategySpec& spec)
{
    StrategyLedger ledger;
    ledger.initial_value = spec.initial_value;
    ledger.trades = all_trades(nullptr, spec, path);
    ledger.times.assign(path.times().begin(), path.times().end());
    ledger.positions = positions_from(ledger.trades, path.size());
    ledger.value = portfolio_value(path, ledger.positions, spec.initial_value);
    ledger.drawdown = drawdown_series(ledger.value);
    fill_trade_values(ledger.trades, path, ledger.value);

    ledger.realized.assign(path.size(), 0.0);
    std::vector<double> booked(path.size(), 0.0);
    const auto s = path.values();
    for (const auto& t : ledger.trades) {
        if (t.exit_index >= path.size()) continue;
        booked[t.exit_index] += leg_sign(t.leg) * (s[t.exit_index] - s[t.entry_index]);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        acc += booked[i];
        ledger.realized[i] = acc;
    }
    return ledger;
}

RealizedSplit realized_profit_split(const StrategyLedger& ledger)
{
    RealizedSplit out;
    out.realized = ledger.realized;
    out.mark_to_market.resize(ledger.value.size());
    for (std::size_t i = 0; i < ledger.value.size(); ++i)
        out.mark_to_market[i] = ledger.value[i] - ledger.initial_value - ledger.realized[i];
    return out;
}

double worst_loss(const StrategyLedger& ledger)
{
    double worst = 0.0;
    for (double v : ledger.value) worst = std::max(worst, ledger.initial_value - v);
    return worst;
}

TradeCycleTable cycle_table(const CrossingTimes& crossings, const Path& path, const StrategySpec& spec)
{
    TradeCycleTable trades = all_trades(&crossings, spec, path);
    const auto value = portfolio_value(path, positions_from(trades, path.size()), spec.initial_value);
    fill_trade_values(trades, path, value);
    std::erase_if(trades, [](const TradeCycle& t) { return !t.complete; });
    return trades;
}

} // namespace exkit
