#include <benchmark/benchmark.h>

#include "lmthresh/alrsm.hpp"
#include "lmthresh/gpd.hpp"
#include "lmthresh/hybrid.hpp"
#include "lmthresh/simstudy.hpp"
#include "lmthresh/stopping_rules.hpp"

using namespace lmthresh;

static void BM_SampleLMoments(benchmark::State& state) {
    const SortedSample s(hybrid_sample(static_cast<std::size_t>(state.range(0)), {0.75, 0.2}, 1));
    for (auto _ : state) benchmark::DoNotOptimize(sample_lmoments(s));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleLMoments)->Arg(100)->Arg(1000)->Arg(100000);

static void BM_MinDistance(benchmark::State& state) {
    double t3 = -0.8;
    for (auto _ : state) {
        benchmark::DoNotOptimize(min_distance_to_curve(t3, 0.3));
        t3 = t3 > 0.8 ? -0.8 : t3 + 0.01;
    }
}
BENCHMARK(BM_MinDistance);

static void BM_SelectThreshold(benchmark::State& state) {
    const SortedSample s(hybrid_sample(static_cast<std::size_t>(state.range(0)), {0.75, 0.2}, 2));
    const auto grid = candidate_grid(s, GridScheme::I20);
    for (auto _ : state) benchmark::DoNotOptimize(select_threshold(s, grid));
}
BENCHMARK(BM_SelectThreshold)->Arg(200)->Arg(1000);

static void BM_FitMl(benchmark::State& state) {
    const SortedSample s(gpd_sample(static_cast<std::size_t>(state.range(0)), {0.2, 1.0}, 3));
    for (auto _ : state) benchmark::DoNotOptimize(fit_ml(s));
}
BENCHMARK(BM_FitMl)->Arg(100)->Arg(1000);

static void BM_Replication(benchmark::State& state) {
    const Scenario sc{0.2, 0.75, static_cast<std::size_t>(state.range(0)), GridScheme::I20, 1, 4};
    std::size_t rep = 0;
    for (auto _ : state) benchmark::DoNotOptimize(run_replication(sc, rep++));
}
BENCHMARK(BM_Replication)->Arg(200)->Arg(1000)->Unit(benchmark::kMicrosecond);

static void BM_ForwardStop(benchmark::State& state) {
    PValueSequence seq;
    for (std::size_t i = 0; i < 20; ++i) {
        seq.pvalues.push_back(0.05 * static_cast<double>(i) / 20.0);
        seq.labels.push_back(i + 1);
    }
    for (auto _ : state) benchmark::DoNotOptimize(forward_stop(seq, 0.05));
}
BENCHMARK(BM_ForwardStop);
BENCHMARK_MAIN();
