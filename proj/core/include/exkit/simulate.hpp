#pragma once

#include "exkit/models.hpp"
#include "exkit/path.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace exkit {

struct SimConfig {
    double dt = 1.0;
    /// Number of increments; each path has n_steps + 1 samples starting at t = 0.
    std::size_t n_steps = 1;
    std::size_t n_paths = 1;
    std::uint64_t seed = 0;
    double x0 = 0.0;
    unsigned threads = 1;

    void validate() const;
};

/// Path i of every simulator draws from RandomStream(seed, i) only, so batches
/// are reproducible regardless of thread count.
std::vector<Path> simulate_bm(double sigma, const SimConfig& config);
/// Exact AR(1) transition of the OU process on the grid.
std::vector<Path> simulate_ou(double alpha, double mu, double gamma, const SimConfig& config);
std::vector<Path> simulate_fbm(double hurst, const SimConfig& config);
/// Euler recursion driven by exact fBM increments.
std::vector<Path> simulate_fou(double lambda, double gamma, double hurst, const SimConfig& config);
std::vector<Path> simulate(const DiffusionModel& model, const SimConfig& config);

/// Alternating segments: up_model from 0 until the first sample >= delta,
/// then down_model from that sample until the first sample <= 0, which is
/// recorded as exactly 0 and starts the next up segment.
struct ConcatSpec {
    DiffusionModel up_model = OrnsteinUhlenbeck{};
    DiffusionModel down_model = OrnsteinUhlenbeck{};
    double delta = 1.0;
    /// Overrides config.n_steps with ceil(horizon / dt) when positive.
    double horizon = 0.0;
    std::size_t max_segment_steps = 10'000'000;
};

enum class SegmentLabel : std::int8_t { down = -1, up = 1 };

struct ConcatBatch {
    std::vector<Path> paths;
    /// Per sample: the segment that produced it (the start sample is `up`).
    std::vector<std::vector<SegmentLabel>> labels;
};

ConcatBatch simulate_concat(const ConcatSpec& spec, const SimConfig& config);

} // namespace exkit
