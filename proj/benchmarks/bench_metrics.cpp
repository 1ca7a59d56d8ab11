#include <benchmark/benchmark.h>

#include <graphpriv/metrics.hpp>

#include "helpers.hpp"

using namespace graphpriv;
using namespace testing_fixtures;

namespace {

void BM_EvaluateAll(benchmark::State& state) {
  // Seeds are probed until at least half of the nodes carry candidate rows.
  const auto total = static_cast<std::size_t>(state.range(0));
  AdversaryEstimate estimate;
  for (std::uint64_t seed = 99; estimate.attempted_count() < total / 2; ++seed) {
    estimate = random_estimate(seed, total, total * 2);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_all(estimate));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(estimate.attempted_count()));
}
BENCHMARK(BM_EvaluateAll)->Arg(100)->Arg(1000)->Arg(5000);

}  // namespace
