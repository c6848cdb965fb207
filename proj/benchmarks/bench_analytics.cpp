#include <exkit/analytics.hpp>
#include <exkit/renewal.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <limits>
#include <vector>

namespace {

const exkit::OrnsteinUhlenbeck kOu{0.5, 0.0, 0.1};

void BM_StopLossProbability(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(exkit::stop_loss_probability(kOu, 0.1, 0.2));
}
BENCHMARK(BM_StopLossProbability);

void BM_ExpectedMaxLoss(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(exkit::expected_max_loss(kOu, 0.1, std::numeric_limits<double>::infinity()));
}
BENCHMARK(BM_ExpectedMaxLoss);

void BM_CycleMgf(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(exkit::cycle_mgf(kOu, 0.5, 0.1));
}
BENCHMARK(BM_CycleMgf);

void BM_RenewalSolve(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<double> t(n), F(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = 10.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        F[i] = -std::expm1(-t[i]);
    }
    for (auto _ : state) benchmark::DoNotOptimize(exkit::renewal_solve(F, t));
}
BENCHMARK(BM_RenewalSolve)->Arg(1001)->Arg(4001);

void BM_ExpectedTrades(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(exkit::expected_trades(kOu, 0.1, 28800.0));
}
BENCHMARK(BM_ExpectedTrades)->Unit(benchmark::kMillisecond);

} // namespace
