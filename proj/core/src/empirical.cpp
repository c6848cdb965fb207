#include "exkit/empirical.hpp"

#include "exkit/crossings.hpp"
#include "exkit/error.hpp"
#include "exkit/parallel.hpp"
#include "exkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace exkit {

void PairSignalConfig::validate() const
{
    if (!(refit_interval > 0.0) || !std::isfinite(refit_interval))
        fail(ErrorCode::InvalidParam, "refit interval must be > 0");
    if (!(window >= refit_interval) || !std::isfinite(window))
        fail(ErrorCode::InvalidParam, "window must be >= refit interval");
}

PairSignal pairs_signal(const Path& price_a, const Path& price_b, const PairSignalConfig& config)
{
    config.validate();
    std::vector<double> t, a, b;
    for (std::size_t i = 0, j = 0; i < price_a.size() && j < price_b.size();) {
        if (price_a.time(i) < price_b.time(j)) {
            ++i;
        } else if (price_b.time(j) < price_a.time(i)) {
            ++j;
        } else {
            t.push_back(price_a.time(i));
            a.push_back(price_a.value(i));
            b.push_back(price_b.value(j));
            ++i;
            ++j;
        }
    }
    if (t.size() < 2) fail(ErrorCode::InsufficientWindow, "fewer than two common time stamps");

    auto fit_slope = [&](std::size_t lo, std::size_t hi, double& slope) {
        if (hi - lo < 2) return false;
        const LinearFit f = [&] {
            try {
                return ols(std::span<const double>(b).subspan(lo, hi - lo), std::span<const double>(a).subspan(lo, hi - lo));
            } catch (const Error&) {
                return LinearFit{std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0, 0};
            }
        }();
        if (!std::isfinite(f.slope)) return false;
        slope = f.slope;
        return true;
    };

    const double first_refit = t.front() + config.window;
    if (t.back() < first_refit) fail(ErrorCode::InsufficientWindow, "data span is shorter than the first window");

    std::vector<double> st, sv, ratio;
    double slope = 0.0;
    bool have_slope = false;
    std::size_t i = 0;
    for (double r = first_refit; r <= t.back(); r += config.refit_interval) {
        const auto lo = static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), r - config.window) - t.begin());
        const auto hi = static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), r) - t.begin());
        double s = 0.0;
        if (fit_slope(lo, hi, s)) {
            slope = s;
            have_slope = true;
        } else if (!have_slope) {
            fail(ErrorCode::InsufficientWindow, "first window has too few samples for a regression");
        }
        i = std::max(i, hi);
        for (; i < t.size() && t[i] < r + config.refit_interval; ++i) {
            st.push_back(t[i]);
            sv.push_back(a[i] - slope * b[i]);
            ratio.push_back(slope);
        }
    }
    if (st.size() < 2) fail(ErrorCode::InsufficientWindow, "signal has fewer than two samples");
    return {Path(std::move(st), std::move(sv), "pairs_signal"), std::move(ratio)};
}

OUFit estimate_ou_moments(const Path& path, double dt)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorCode::InvalidParam, "dt must be > 0");
    for (std::size_t i = 1; i < path.size(); ++i) {
        if (std::abs(path.time(i) - path.time(i - 1) - dt) > 1e-6 * dt)
            fail(ErrorCode::InvalidParam, "path is not uniformly sampled at dt");
    }
    if (path.size() < 3) fail(ErrorCode::InsufficientData, "need at least three samples");
    const auto x = path.values();
    OUFit fit;
    fit.dt = dt;
    fit.mu_hat = sample_mean(x);
    double ss = 0.0, lag = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - fit.mu_hat;
        ss += d * d;
        if (i + 1 < x.size()) lag += d * (x[i + 1] - fit.mu_hat);
    }
    if (!(ss > 0.0)) fail(ErrorCode::NonMeanReverting, "constant path: autocorrelation undefined");
    fit.rho_hat = lag / ss;
    if (!(fit.rho_hat > 0.0 && fit.rho_hat < 1.0))
        fail(ErrorCode::NonMeanReverting, "lag-1 autocorrelation " + std::to_string(fit.rho_hat) + " is outside (0,1)");
    fit.alpha_hat = -std::log(fit.rho_hat) / dt;
    fit.gamma_hat = std::sqrt(2.0 * fit.alpha_hat * sample_variance(x));
    return fit;
}

std::vector<double> EmpiricalExcursionMeasure::durations() const
{
    std::vector<double> out;
    out.reserve(stats.size());
    for (const auto& s : stats) out.push_back(s.duration);
    return out;
}

std::vector<double> EmpiricalExcursionMeasure::max_heights() const
{
    std::vector<double> out;
    out.reserve(stats.size());
    for (const auto& s : stats) out.push_back(s.max_height);
    return out;
}

EmpiricalExcursionMeasure empirical_measure(const Path& path, double delta, const DecomposeOptions& options)
{
    EmpiricalExcursionMeasure m;
    m.delta = delta;
    m.source_span = path.span();
    m.excursions = decompose(path, delta, options);
    std::erase_if(m.excursions, [](const DeltaExcursion& e) { return !e.complete; });
    if (m.excursions.empty()) fail(ErrorCode::NoCompleteExcursions, "path has no complete delta-excursion");
    m.stats.reserve(m.excursions.size());
    for (const auto& e : m.excursions)
        m.stats.push_back({e.duration(), e.max_height(), e.waiting_duration(), e.holding_duration()});
    return m;
}

std::vector<Path> bootstrap_paths(const EmpiricalExcursionMeasure& measure, double horizon, std::size_t n_paths,
                                  std::uint64_t seed, unsigned threads)
{
    if (measure.excursions.empty()) fail(ErrorCode::EmptyMeasure, "empirical measure has no excursions");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) fail(ErrorCode::InvalidParam, "horizon must be > 0");
    if (n_paths < 1) fail(ErrorCode::InvalidParam, "need at least one path");
    const double end_slack = 1e-9 * horizon;

    std::vector<std::vector<double>> times(n_paths), values(n_paths);
    parallel_for(n_paths, threads, [&](std::size_t p) {
        RandomStream rng(seed, p);
        std::vector<double> t{0.0}, v{0.0};
        while (t.back() < horizon - end_slack) {
            const auto& e = measure.excursions[rng.below(measure.excursions.size())];
            const double t0 = e.times.front(), offset = t.back();
            if (t.size() > 1) v.back() = e.values.front();
            for (std::size_t j = 1; j < e.values.size(); ++j) {
                const double tj = e.times[j] - t0 + offset;
                if (tj > horizon + end_slack) break;
                t.push_back(tj);
                v.push_back(e.values[j]);
            }
            if (e.times.back() - t0 + offset > horizon + end_slack) break;
        }
        times[p] = std::move(t);
        values[p] = std::move(v);
    });

    std::vector<Path> out;
    out.reserve(n_paths);
    for (std::size_t p = 0; p < n_paths; ++p) {
        if (values[p].size() < 2) fail(ErrorCode::InvalidParam, "horizon is shorter than one sampling step");
        out.emplace_back(std::move(times[p]), std::move(values[p]), "bootstrap");
    }
    return out;
}

DistributionReport distribution_report(std::span<const double> samples_a, std::span<const double> samples_b)
{
    if (samples_a.empty() || samples_b.empty()) fail(ErrorCode::InsufficientData, "both samples must be non-empty");
    DistributionReport r;
    r.ks = ks_two_sample(samples_a, samples_b);
    r.rank_frequency_a = rank_frequency(samples_a);
    r.rank_frequency_b = rank_frequency(samples_b);
    auto tail = [](std::span<const double> x) {
        try {
            return pareto_tail_exponent(x);
        } catch (const Error&) {
            return TailFit{std::numeric_limits<double>::quiet_NaN(), 0.0, 0};
        }
    };
    r.tail_a = tail(samples_a);
    r.tail_b = tail(samples_b);
    return r;
}

} // namespace exkit
