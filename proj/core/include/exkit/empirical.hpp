#pragma once

#include "exkit/excursion.hpp"
#include "exkit/path.hpp"
#include "exkit/stats.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace exkit {

struct PairSignalConfig {
    double window = 5.0 * 86400.0;
    double refit_interval = 86400.0;

    void validate() const;
};

struct PairSignal {
    /// A - a_t B on every joined sample after the first full window.
    Path signal;
    /// a_t per signal sample (piecewise constant between refits).
    std::vector<double> hedge_ratio;
};

/// Rolling OLS of A on B (with intercept) over the trailing window, refitted
/// every refit_interval; only the slope enters the signal. Samples are
/// matched on identical time stamps.
PairSignal pairs_signal(const Path& price_a, const Path& price_b, const PairSignalConfig& config = {});

struct OUFit {
    double alpha_hat = 0.0;
    double mu_hat = 0.0;
    double gamma_hat = 0.0;
    double dt = 0.0;
    double rho_hat = 0.0;
};

/// Method of moments: mean, variance and lag-1 autocorrelation.
OUFit estimate_ou_moments(const Path& path, double dt);

struct ExcursionStats {
    double duration = 0.0;
    /// Largest value, i.e. height above the reference level 0.
    double max_height = 0.0;
    double waiting = 0.0;
    double holding = 0.0;
};

struct EmpiricalExcursionMeasure {
    double delta = 0.0;
    double source_span = 0.0;
    std::vector<DeltaExcursion> excursions;
    std::vector<ExcursionStats> stats;

    [[nodiscard]] std::vector<double> durations() const;
    [[nodiscard]] std::vector<double> max_heights() const;
};

/// Complete delta-excursions of the path and their summary statistics.
EmpiricalExcursionMeasure empirical_measure(const Path& path, double delta, const DecomposeOptions& options = {});

/// Excursions drawn uniformly with replacement and pasted end to start
/// until the horizon is covered, then truncated at it. Values are not
/// shifted: the joint sample takes the later excursion's first value (<= 0,
/// like the exit sample it replaces), so re-decomposing a path returns the
/// source excursions sample for sample. The path itself starts at 0.
std::vector<Path> bootstrap_paths(const EmpiricalExcursionMeasure& measure, double horizon, std::size_t n_paths,
                                  std::uint64_t seed, unsigned threads = 1);

struct DistributionReport {
    KSResult ks;
    std::vector<RankFrequencyRow> rank_frequency_a;
    std::vector<RankFrequencyRow> rank_frequency_b;
    /// exponent is NaN when the upper decile has fewer than three positive points.
    TailFit tail_a;
    TailFit tail_b;
};

DistributionReport distribution_report(std::span<const double> samples_a, std::span<const double> samples_b);

} // namespace exkit
