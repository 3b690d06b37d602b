#include <benchmark/benchmark.h>

#include "prineig/rng.hpp"
#include "prineig/simulation.hpp"
#include "prineig/spectral.hpp"

using namespace prineig;

namespace {

PanelData bench_panel(int n, int t) {
    auto [design, other] = design_pair(DesignName::sigma1, DesignName::sigma3, n, std::nullopt,
                                       Innovation::student_t8, 7);
    (void)other;
    const Population population = build_population(design);
    return draw_panel(population.v, population.lambda, t, Innovation::student_t8, 11);
}

}  // namespace

static void BM_SampleCovariance(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PanelData panel = bench_panel(n, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_covariance(panel, false));
    }
}
BENCHMARK(BM_SampleCovariance)->Arg(100)->Arg(300)->Arg(500);

static void BM_SpectralSummary(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PanelData panel = bench_panel(n, n);
    const Eigen::MatrixXd cov = sample_covariance(panel, false);
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectral_summary(cov, FactorCount{3}, n));
    }
}
BENCHMARK(BM_SpectralSummary)->Arg(100)->Arg(300)->Arg(500);

static void BM_DrawPanelT8(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto [design, other] = design_pair(DesignName::sigma1, DesignName::sigma3, n, std::nullopt,
                                       Innovation::student_t8, 7);
    (void)other;
    const Population population = build_population(design);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            draw_panel(population.v, population.lambda, n, Innovation::student_t8, ++seed));
    }
}
BENCHMARK(BM_DrawPanelT8)->Arg(100)->Arg(300);
