// Serial reference vs OpenMP kernels: state-space exploration and corpus edge checking.

#include <benchmark/benchmark.h>

#include "livelab/hierarchy/analyzer.hpp"
#include "livelab/hierarchy/corpus.hpp"
#include "livelab/mc/explore.hpp"

using namespace livelab;

namespace {

void BM_ExploreSerial(benchmark::State& st) {
    const auto cfg = SystemConfig::paxos(2, static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(mc::explore_serial(cfg, 2).stable_length);
}

void BM_ExploreParallel(benchmark::State& st) {
    const auto cfg = SystemConfig::paxos(2, static_cast<int>(st.range(0)));
    mc::ExploreOptions opts;
    opts.jobs = static_cast<int>(st.range(1));
    for (auto _ : st) benchmark::DoNotOptimize(mc::explore_parallel(cfg, 2, opts).stable_length);
}

const std::vector<temporal::Trace>& corpus() {
    static const auto c = hierarchy::generate_corpus({2000, 1});
    return c;
}

void BM_EdgesSerial(benchmark::State& st) {
    corpus();
    for (auto _ : st) benchmark::DoNotOptimize(hierarchy::check_edges_serial(corpus()).size());
}

void BM_EdgesParallel(benchmark::State& st) {
    corpus();
    for (auto _ : st)
        benchmark::DoNotOptimize(hierarchy::check_edges_parallel(corpus(), static_cast<int>(st.range(0))).size());
}

} // namespace

BENCHMARK(BM_ExploreSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExploreParallel)->Args({3, 2})->Args({3, 4})->Args({4, 2})->Args({4, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EdgesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EdgesParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
