#pragma once

// Independent reference implementations for the tests. Nothing here calls
// into the library: random numbers come from std::mt19937_64 and
// integrals from a plain adaptive Simpson rule.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace oracle {

class Normal {
public:
    explicit Normal(std::uint64_t seed) : engine_(seed) {}
    double operator()() { return dist_(engine_); }
    double uniform() { return unif_(engine_); }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> dist_{0.0, 1.0};
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

/// Exact OU (or BM when alpha = 0) transition with a Brownian-bridge test for
/// crossings between grid points. Returns the first time the process started
/// at x0 reaches `barrier`; stops early with +inf past t_max.
double first_passage(double x0, double barrier, double alpha, double gamma, double dt, Normal& rng,
                     double t_max = 1e12);

/// Brownian first passage over `distance` with step sizes that shrink near
/// the barrier. Each step is an exact Gaussian move plus an exact bridge
/// crossing test, so the law is exact up to the final step (<= h_min).
/// Returns t_max when the barrier is not reached by then.
double bm_first_passage(double distance, double sigma, Normal& rng, double t_max, double h_min = 1e-7);

struct Race {
    bool upper_first = false;
    double time = 0.0;
};

/// First exit of (lower, upper) from x0 with the same bridge-corrected stepping.
Race first_exit(double x0, double lower, double upper, double alpha, double gamma, double dt, Normal& rng);

/// Running maximum of an OU/BM path from x0 until it reaches `lower`,
/// bridge-corrected for both the hitting test and the maximum.
double max_before(double x0, double lower, double alpha, double gamma, double dt, Normal& rng);

/// Running maximum of sigma B started at x0 > 0 until it reaches 0. Steps
/// adapt to the distance from 0 (about 25 steps per unit of log-distance)
/// and the maximum inside each step is drawn from the bridge law.
double bm_max_before_zero(double x0, double sigma, Normal& rng, double h_min = 1e-10);

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                        int max_depth = 50);

/// Sup distance between the empirical CDF of `sample` and `cdf`.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Straightforward linear-scan count of completed 0 -> delta -> 0 cycles.
std::size_t scan_crossings(std::span<const double> v, double delta);

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};
MeanSe mean_se(std::span<const double> x);

} // namespace oracle
