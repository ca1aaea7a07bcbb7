#include <benchmark/benchmark.h>

#include <complex>

#include "susydirac/potential.hpp"
#include "susydirac/resolvent.hpp"

using namespace susydirac;

static const std::vector<std::pair<double, double>> kPairs = {
    {0.0, 0.0}, {0.5, -0.3}, {1.0, 1.0}, {-0.8, 0.4}, {1.5, 0.9},
    {-1.2, -0.6}, {0.3, 1.1}, {2.0, -1.0}, {0.9, 0.9}, {-0.4, -1.6}};

static void BM_grid_kernel(benchmark::State& state) {
    const PhysicalConstants consts;
    auto spec = PotentialSpec::oscillator(consts, 1.0);
    Grid grid(-12.0, 12.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(dirac_resolvent({0.0, 0.0}, spec, consts, grid,
                                                 ResolventMethod::grid_inverse, kPairs));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_grid_kernel)->RangeMultiplier(2)->Range(501, 4001)->Complexity()
    ->Unit(benchmark::kMillisecond);

static void BM_closed_form_kernel(benchmark::State& state) {
    const PhysicalConstants consts;
    auto spec = PotentialSpec::oscillator(consts, 1.0);
    Grid grid(-12.0, 12.0, 2001);
    for (auto _ : state)
        benchmark::DoNotOptimize(dirac_resolvent({0.0, 0.0}, spec, consts, grid,
                                                 ResolventMethod::closed_form_oscillator, kPairs));
}
BENCHMARK(BM_closed_form_kernel)->Unit(benchmark::kMicrosecond);
