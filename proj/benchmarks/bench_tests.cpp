#include <benchmark/benchmark.h>

#include "prineig/simulation.hpp"
#include "prineig/two_sample.hpp"

using namespace prineig;

namespace {

TwoSampleInput bench_input(int n) {
    auto [design1, design2] = design_pair(DesignName::sigma1, DesignName::sigma2, n,
                                          std::nullopt, Innovation::student_t8, 13);
    const Population pop1 = build_population(design1);
    const Population pop2 = build_population(design2);
    PanelData panel1 = draw_panel(pop1.v, pop1.lambda, n, Innovation::student_t8, 1);
    PanelData panel2 = draw_panel(pop2.v, pop2.lambda, n * 3 / 2, Innovation::student_t8, 2);
    return make_two_sample_input(std::move(panel1), std::move(panel2), 3, false);
}

}  // namespace

static void BM_TestEigenvalue(benchmark::State& state) {
    const TwoSampleInput input = bench_input(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(test_eigenvalue(input, 1));
    }
}
BENCHMARK(BM_TestEigenvalue)->Arg(100)->Arg(300);

static void BM_TestEigenvector(benchmark::State& state) {
    const TwoSampleInput input = bench_input(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(test_eigenvector(input, 1, 20000, 5, {0.05}, 1));
    }
}
BENCHMARK(BM_TestEigenvector)->Arg(100)->Arg(300);

static void BM_FullBattery(benchmark::State& state) {
    const TwoSampleInput input = bench_input(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_battery(input, {0.05}, 20000, 5, 1));
    }
}
BENCHMARK(BM_FullBattery)->Arg(100);
