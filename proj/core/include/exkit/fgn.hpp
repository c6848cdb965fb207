#pragma once

#include "exkit/rng.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace exkit {

/// Autocovariance of unit-step fractional Gaussian noise at lag k.
double fgn_autocovariance(std::size_t k, double hurst);

/// Exact fractional Gaussian noise (unit step, unit variance).
///
/// Circulant embedding (Davies-Harte) is set up once per (n, H); each call
/// then costs one FFT. If the embedding has a negative eigenvalue, or when
/// forced, generation falls back to Durbin-Levinson conditioning (O(n^2)).
class FgnGenerator {
public:
    enum class Method { circulant, levinson };

    FgnGenerator(std::size_t n, double hurst, bool force_levinson = false);
    ~FgnGenerator();
    FgnGenerator(FgnGenerator&&) noexcept;
    FgnGenerator& operator=(FgnGenerator&&) noexcept;
    FgnGenerator(const FgnGenerator&) = delete;
    FgnGenerator& operator=(const FgnGenerator&) = delete;

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] Method method() const noexcept { return method_; }

    /// Fills out (length size()) with one draw. Safe to call concurrently.
    void generate(RandomStream& rng, std::span<double> out) const;

private:
    struct Fft;
    std::size_t n_;
    double hurst_;
    Method method_ = Method::circulant;
    std::vector<double> sqrt_eigen_;  // sqrt(lambda_k / M)
    std::vector<double> acov_;
    std::unique_ptr<Fft> fft_;

    void generate_levinson(RandomStream& rng, std::span<double> out) const;
};

} // namespace exkit
