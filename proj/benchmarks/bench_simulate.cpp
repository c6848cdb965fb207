#include <exkit/fgn.hpp>
#include <exkit/rng.hpp>
#include <exkit/simulate.hpp>

#include <benchmark/benchmark.h>

#include <vector>

namespace {

void BM_SimulateOU(benchmark::State& state)
{
    exkit::SimConfig cfg;
    cfg.n_steps = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        ++cfg.seed;
        benchmark::DoNotOptimize(exkit::simulate_ou(0.5, 0.0, 0.1, cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateOU)->Arg(28800)->Arg(1 << 20);

void BM_FgnGenerate(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const exkit::FgnGenerator gen(n, 0.3);
    std::vector<double> out(n);
    exkit::RandomStream rng(1, 0);
    for (auto _ : state) {
        gen.generate(rng, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FgnGenerate)->Arg(28800)->Arg(1 << 18);

void BM_Concat(benchmark::State& state)
{
    exkit::ConcatSpec spec;
    spec.up_model = exkit::OrnsteinUhlenbeck{0.4, 0.0, 0.4};
    spec.down_model = exkit::OrnsteinUhlenbeck{0.1, 0.0, 0.1};
    spec.delta = 0.5;
    exkit::SimConfig cfg;
    cfg.n_steps = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(exkit::simulate_concat(spec, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Concat)->Arg(10000);

} // namespace
