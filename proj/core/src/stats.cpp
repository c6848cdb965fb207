#include "exkit/stats.hpp"

#include "exkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace exkit {

LinearFit ols(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) fail(ErrorCode::LengthMismatch, "ols: x and y differ in length");
    const std::size_t n = x.size();
    if (n < 2) fail(ErrorCode::InsufficientData, "ols needs at least two points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) fail(ErrorCode::InsufficientData, "ols: x has no spread");
    LinearFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

double kolmogorov_survival(double lambda)
{
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-17) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

std::vector<double> sorted_copy(std::span<const double> x)
{
    std::vector<double> v(x.begin(), x.end());
    std::sort(v.begin(), v.end());
    return v;
}

// Stephens' small-sample correction of the asymptotic statistic.
double ks_p_value(double d, double n_eff)
{
    const double s = std::sqrt(n_eff);
    return kolmogorov_survival((s + 0.12 + 0.11 / s) * d);
}

} // namespace

KSResult ks_two_sample(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty()) fail(ErrorCode::InsufficientData, "ks: empty sample");
    const auto x = sorted_copy(a);
    const auto y = sorted_copy(b);
    const double na = static_cast<double>(x.size()), nb = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) ++i;
        while (j < y.size() && y[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return {d, ks_p_value(d, na * nb / (na + nb))};
}

KSResult ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf)
{
    if (sample.empty()) fail(ErrorCode::InsufficientData, "ks: empty sample");
    const auto x = sorted_copy(sample);
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return {d, ks_p_value(d, n)};
}

std::vector<RankFrequencyRow> rank_frequency(std::span<const double> sample)
{
    std::vector<double> v(sample.begin(), sample.end());
    std::sort(v.begin(), v.end(), std::greater<>());
    std::vector<RankFrequencyRow> rows(v.size());
    const double n = static_cast<double>(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) rows[i] = {v[i], static_cast<double>(i + 1) / n};
    return rows;
}

double rank_frequency_distance(std::span<const double> a, std::span<const double> b)
{
    // Survival curves differ by exactly the CDF gap.
    return ks_two_sample(a, b).statistic;
}

TailFit pareto_tail_exponent(std::span<const double> sample, double fraction)
{
    if (!(fraction > 0.0 && fraction <= 1.0)) fail(ErrorCode::InvalidParam, "tail fraction must be in (0,1]");
    const auto rows = rank_frequency(sample);
    const auto k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(rows.size())));
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < k; ++i) {
        if (rows[i].value <= 0.0) break;
        lx.push_back(std::log(rows[i].value));
        ly.push_back(std::log(rows[i].frequency));
    }
    if (lx.size() < 3) fail(ErrorCode::InsufficientData, "tail fit needs at least three positive order statistics");
    const LinearFit fit = ols(lx, ly);
    return {-fit.slope, fit.r_squared, fit.n};
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double log_normal_tail(double z)
{
    if (z < 30.0) return std::log(0.5 * std::erfc(z / std::numbers::sqrt2));
    // Asymptotic Mills-ratio series; erfc underflows past this point.
    const double r = 1.0 / (z * z);
    const double series = 1.0 - r * (1.0 - 3.0 * r * (1.0 - 5.0 * r * (1.0 - 7.0 * r)));
    return -0.5 * z * z - std::log(z) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(series);
}

} // namespace exkit
