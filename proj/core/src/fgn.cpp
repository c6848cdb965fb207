#include "exkit/fgn.hpp"

#include "exkit/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>

namespace exkit {
namespace {

// FFTW's planner is not thread-safe; execution with new arrays is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer make_buffer(std::size_t m)
{
    auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m));
    if (!p) throw std::bad_alloc();
    return FftwBuffer(p);
}

} // namespace

struct FgnGenerator::Fft {
    std::size_t m = 0;
    fftw_plan plan = nullptr;

    explicit Fft(std::size_t size) : m(size)
    {
        auto in = make_buffer(m);
        auto out = make_buffer(m);
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(m), in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE);
        if (!plan) fail(ErrorCode::InvalidParam, "FFTW could not plan a transform of this size");
    }
    ~Fft()
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    void run(fftw_complex* in, fftw_complex* out) const { fftw_execute_dft(plan, in, out); }
};

double fgn_autocovariance(std::size_t k, double hurst)
{
    const double h2 = 2.0 * hurst;
    const double kk = static_cast<double>(k);
    if (k == 0) return 1.0;
    return 0.5 * (std::pow(kk + 1.0, h2) - 2.0 * std::pow(kk, h2) + std::pow(kk - 1.0, h2));
}

FgnGenerator::FgnGenerator(std::size_t n, double hurst, bool force_levinson) : n_(n), hurst_(hurst)
{
    if (n == 0) fail(ErrorCode::InvalidParam, "fGn length must be positive");
    if (!(hurst > 0.0 && hurst < 1.0)) fail(ErrorCode::InvalidParam, "H must be in (0,1)");
    acov_.resize(n);
    for (std::size_t k = 0; k < n; ++k) acov_[k] = fgn_autocovariance(k, hurst);
    if (force_levinson) {
        method_ = Method::levinson;
        return;
    }

    // Embed the n x n Toeplitz covariance in a circulant of size M = 2m, m >= n a power of two.
    std::size_t half = 1;
    while (half < n) half <<= 1;
    const std::size_t m = 2 * half;
    fft_ = std::make_unique<Fft>(m);
    auto row = make_buffer(m);
    auto eig = make_buffer(m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t lag = j <= half ? j : m - j;
        row[j][0] = fgn_autocovariance(lag, hurst);
        row[j][1] = 0.0;
    }
    fft_->run(row.get(), eig.get());

    double peak = 0.0;
    for (std::size_t j = 0; j < m; ++j) peak = std::max(peak, std::abs(eig[j][0]));
    sqrt_eigen_.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        double lambda = eig[j][0];
        if (lambda < 0.0) {
            if (lambda < -1e-10 * peak) {
                method_ = Method::levinson;
                sqrt_eigen_.clear();
                fft_.reset();
                return;
            }
            lambda = 0.0;
        }
        sqrt_eigen_[j] = std::sqrt(lambda / static_cast<double>(m));
    }
}

FgnGenerator::~FgnGenerator() = default;
FgnGenerator::FgnGenerator(FgnGenerator&&) noexcept = default;
FgnGenerator& FgnGenerator::operator=(FgnGenerator&&) noexcept = default;

void FgnGenerator::generate(RandomStream& rng, std::span<double> out) const
{
    if (out.size() != n_) fail(ErrorCode::LengthMismatch, "fGn output has the wrong length");
    if (method_ == Method::levinson) {
        generate_levinson(rng, out);
        return;
    }
    // Real part of FFT(sqrt(lambda/M) * xi) with xi complex standard normal
    // has exactly the embedded covariance.
    const std::size_t m = fft_->m;
    auto in = make_buffer(m);
    auto res = make_buffer(m);
    for (std::size_t j = 0; j < m; ++j) {
        in[j][0] = sqrt_eigen_[j] * rng.normal();
        in[j][1] = sqrt_eigen_[j] * rng.normal();
    }
    fft_->run(in.get(), res.get());
    for (std::size_t j = 0; j < n_; ++j) out[j] = res[j][0];
}

void FgnGenerator::generate_levinson(RandomStream& rng, std::span<double> out) const
{
    // Durbin-Levinson: X_t = sum phi_{t,j} X_{t-j} + sqrt(v_t) Z_t.
    std::vector<double> phi, prev;
    phi.reserve(n_);
    prev.reserve(n_);
    double v = acov_[0];
    out[0] = std::sqrt(v) * rng.normal();
    for (std::size_t t = 1; t < n_; ++t) {
        double num = acov_[t];
        for (std::size_t j = 0; j < phi.size(); ++j) num -= phi[j] * acov_[t - 1 - j];
        const double kappa = num / v;
        prev = phi;
        phi.resize(t);
        for (std::size_t j = 0; j + 1 < t; ++j) phi[j] = prev[j] - kappa * prev[t - 2 - j];
        phi[t - 1] = kappa;
        v *= (1.0 - kappa * kappa);
        double mean = 0.0;
        for (std::size_t j = 0; j < t; ++j) mean += phi[j] * out[t - 1 - j];
        out[t] = mean + std::sqrt(std::max(v, 0.0)) * rng.normal();
    }
}

} // namespace exkit
