#include <exkit/crossings.hpp>
#include <exkit/excursion.hpp>
#include <exkit/simulate.hpp>
#include <exkit/strategy.hpp>

#include <benchmark/benchmark.h>

namespace {

exkit::Path ou_path(std::size_t steps)
{
    exkit::SimConfig cfg;
    cfg.n_steps = steps;
    cfg.seed = 1;
    return exkit::simulate_ou(0.5, 0.0, 0.1, cfg).front();
}

void BM_Decompose(benchmark::State& state)
{
    const auto p = ou_path(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(exkit::decompose(p, 0.1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Decompose)->Arg(28800)->Arg(1 << 20);

void BM_CountCrossings(benchmark::State& state)
{
    const auto p = ou_path(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(exkit::count_crossings(p.values(), 0.1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CountCrossings)->Arg(1 << 20);

void BM_RunStrategy(benchmark::State& state)
{
    const auto p = ou_path(static_cast<std::size_t>(state.range(0)));
    exkit::StrategySpec spec;
    spec.delta = 0.1;
    spec.stop_loss = 0.2;
    spec.side = exkit::Side::two_sided;
    for (auto _ : state) benchmark::DoNotOptimize(exkit::run_strategy(p, spec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunStrategy)->Arg(28800)->Arg(1 << 20);

} // namespace
