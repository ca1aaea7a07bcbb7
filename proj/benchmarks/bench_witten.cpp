#include <benchmark/benchmark.h>

#include "susydirac/potential.hpp"
#include "susydirac/witten.hpp"

using namespace susydirac;

static void BM_build_partner(benchmark::State& state) {
    const PhysicalConstants consts;
    auto spec = PotentialSpec::oscillator(consts, 1.0);
    Grid grid(-12.0, 12.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(build_partner(spec, consts, grid, PartnerSign::minus, 4));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_build_partner)->RangeMultiplier(2)->Range(501, 8001)->Complexity();

static void BM_solve_spectrum_k8(benchmark::State& state) {
    const PhysicalConstants consts;
    auto spec = PotentialSpec::oscillator(consts, 1.0);
    Grid grid(-12.0, 12.0, static_cast<std::size_t>(state.range(0)));
    auto op = build_partner(spec, consts, grid, PartnerSign::minus, 4);
    for (auto _ : state) benchmark::DoNotOptimize(solve_spectrum(op, 8));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_solve_spectrum_k8)->RangeMultiplier(2)->Range(501, 4001)->Complexity()
    ->Unit(benchmark::kMillisecond);
