#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace exkit {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t n = 0;
};

/// Ordinary least squares y = intercept + slope * x. Needs two distinct x.
LinearFit ols(std::span<const double> x, std::span<const double> y);

/// Asymptotic Kolmogorov tail P(K > lambda) = 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2).
double kolmogorov_survival(double lambda);

struct KSResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

KSResult ks_two_sample(std::span<const double> a, std::span<const double> b);
KSResult ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf);

struct RankFrequencyRow {
    double value = 0.0;
    /// rank / N with rank 1 for the largest value: the empirical survival.
    double frequency = 0.0;
};

/// Sample sorted in decreasing order against rank / N.
std::vector<RankFrequencyRow> rank_frequency(std::span<const double> sample);

/// Largest vertical distance between two empirical survival curves.
double rank_frequency_distance(std::span<const double> a, std::span<const double> b);

struct TailFit {
    double exponent = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

/// Pareto exponent from log-log OLS of rank / N on value over the top
/// `fraction` of the order statistics (positive values only).
TailFit pareto_tail_exponent(std::span<const double> sample, double fraction = 0.1);

double standard_normal_cdf(double x);
/// log P(Z > z) for a standard normal Z, accurate far into the tail.
double log_normal_tail(double z);

} // namespace exkit
