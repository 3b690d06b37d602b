#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "prineig/quadform.hpp"

using namespace prineig;

static void BM_SampleQuadform(benchmark::State& state) {
    const Eigen::Index dim = state.range(0);
    QuadFormSpec spec;
    spec.weights_a = Eigen::VectorXd::Constant(dim, 1.0);
    spec.weights_b = Eigen::VectorXd::Constant(dim, 0.5);
    spec.coupling = Eigen::MatrixXd::Identity(dim, dim) * 0.7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_quadform(spec, 100000, 3, 1));
    }
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_SampleQuadform)->Arg(2)->Arg(3)->Arg(8);

static void BM_WeightedChisq(benchmark::State& state) {
    const Eigen::VectorXd weights = Eigen::VectorXd::Constant(state.range(0), 1.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_weighted_chisq(weights, 100000, 3, 1));
    }
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_WeightedChisq)->Arg(2)->Arg(8);
