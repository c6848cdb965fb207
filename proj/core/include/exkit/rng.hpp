#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace exkit {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// The key is the user seed; the upper half of the counter is the stream
/// (path) index and the lower half counts blocks, so every path has its own
/// reproducible, independent sequence.
class Philox4x32 {
public:
    using result_type = std::uint32_t;

    Philox4x32(std::uint64_t seed, std::uint64_t stream) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Raw block function, exposed for known-answer tests.
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                              std::array<std::uint32_t, 2> key) noexcept;

private:
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> buffer_{};
    unsigned next_ = 4;
};

/// Per-path random stream: uniforms in (0, 1) and standard normals.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept : engine_(seed, stream) {}

    /// 53-bit uniform strictly inside (0, 1).
    double uniform() noexcept;
    /// Box-Muller; the second variate of each pair is cached.
    double normal() noexcept;
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) noexcept;

    Philox4x32& engine() noexcept { return engine_; }

private:
    Philox4x32 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace exkit
