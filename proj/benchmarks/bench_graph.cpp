#include <benchmark/benchmark.h>

#include <graphpriv/anonymizers.hpp>
#include <graphpriv/graph.hpp>

#include "helpers.hpp"

using namespace graphpriv;
using namespace testing_fixtures;

namespace {

const Graph& bench_graph() {
  static const Graph g =
      largest_connected_component(preferential_attachment(2000, 3, 7));
  return g;
}

void BM_LargestConnectedComponent(benchmark::State& state) {
  Graph g = preferential_attachment(2000, 2, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(largest_connected_component(g));
  }
}
BENCHMARK(BM_LargestConnectedComponent);

void BM_GraphStatsSampled(benchmark::State& state) {
  const Graph& g = bench_graph();
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_graph_stats(g, 32, 1));
  }
}
BENCHMARK(BM_GraphStatsSampled);

void BM_SampleAuxiliary(benchmark::State& state) {
  const Graph& g = bench_graph();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_auxiliary(g, 0.85, ++seed));
  }
}
BENCHMARK(BM_SampleAuxiliary);

void BM_AnonymizeSwitch(benchmark::State& state) {
  const Graph& g = bench_graph();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng rng(++seed);
    benchmark::DoNotOptimize(anonymize_switch(g, 0.05, rng));
  }
}
BENCHMARK(BM_AnonymizeSwitch);

void BM_AnonymizeKda(benchmark::State& state) {
  const Graph& g = bench_graph();
  for (auto _ : state) {
    benchmark::DoNotOptimize(anonymize_kda(g, 5));
  }
}
BENCHMARK(BM_AnonymizeKda);

void BM_AnonymizeDp(benchmark::State& state) {
  const Graph& g = bench_graph();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng rng(++seed);
    benchmark::DoNotOptimize(anonymize_dp(g, 1.0, rng));
  }
}
BENCHMARK(BM_AnonymizeDp);

}  // namespace

BENCHMARK_MAIN();
