#include <benchmark/benchmark.h>

#include "susydirac/potential.hpp"
#include "susydirac/quasiclassical.hpp"

using namespace susydirac;

static void BM_action_integral(benchmark::State& state) {
    const PhysicalConstants consts;
    auto spec = PotentialSpec::oscillator(consts, 1.0);
    Grid grid(-12.0, 12.0, 4001);
    for (auto _ : state) benchmark::DoNotOptimize(action_integral(spec, consts, 3.0, grid));
}
BENCHMARK(BM_action_integral)->Unit(benchmark::kMicrosecond);

static void BM_cbc_level(benchmark::State& state) {
    const PhysicalConstants consts;
    auto spec = PotentialSpec::oscillator(consts, 1.0);
    Grid grid(-12.0, 12.0, 4001);
    QcOptions opt;
    opt.override_regime = true;  // skip re-classification in the hot loop
    for (auto _ : state)
        benchmark::DoNotOptimize(cbc_level(spec, consts, grid, static_cast<int>(state.range(0)), opt));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_cbc_level)->RangeMultiplier(2)->Range(1, 8)->Complexity()
    ->Unit(benchmark::kMillisecond);
