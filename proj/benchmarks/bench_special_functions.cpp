#include <benchmark/benchmark.h>

#include "susydirac/special_functions.hpp"

using namespace susydirac;

static void BM_pcf_series_region(benchmark::State& state) {
    double y = 0.0;
    for (auto _ : state) {
        y = (y > 3.9) ? -3.9 : y + 0.37;
        benchmark::DoNotOptimize(pcf_D(-0.63, y));
    }
}
BENCHMARK(BM_pcf_series_region);

static void BM_pcf_recurrence_region(benchmark::State& state) {
    const double nu = static_cast<double>(state.range(0)) + 0.37;
    for (auto _ : state) benchmark::DoNotOptimize(pcf_D(nu, 5.4));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_pcf_recurrence_region)->RangeMultiplier(2)->Range(1, 16)->Complexity();

static void BM_gamma(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        x = (x > 10.0) ? 0.1 : x + 0.173;
        benchmark::DoNotOptimize(gamma_function(x));
    }
}
BENCHMARK(BM_gamma);

static void BM_hermite_state(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(hermite_state(n, 1.3, 1.0, 1.0, 1.0));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_hermite_state)->RangeMultiplier(4)->Range(1, 256)->Complexity();
