#include <benchmark/benchmark.h>

#include <cmath>

#include <graphpriv/rng.hpp>
#include <graphpriv/strength.hpp>
#include <graphpriv/suites.hpp>

using namespace graphpriv;

namespace {

ScenarioSeries synthetic_series(std::size_t levels, std::size_t reps) {
  Rng rng(17);
  ScenarioSeries s;
  s.id = {"bench", "switch", "ns", "seeds"};
  s.metric = &metric_by_name("adversary_overall_success");
  for (std::size_t l = 0; l < levels; ++l) {
    std::vector<double> level;
    for (std::size_t r = 0; r < reps; ++r) {
      level.push_back(0.1 * static_cast<double>(l) + 0.01 * rng.next_double());
    }
    s.levels.push_back(std::move(level));
  }
  return s;
}

void BM_MonotonicityScore(benchmark::State& state) {
  const auto series = synthetic_series(6, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(monotonicity_score(series));
  }
}
BENCHMARK(BM_MonotonicityScore)->Arg(100)->Arg(1000);

void BM_EvennessScore(benchmark::State& state) {
  Rng rng(3);
  std::vector<double> pooled;
  for (std::int64_t i = 0; i < state.range(0); ++i) pooled.push_back(rng.next_double());
  for (auto _ : state) {
    benchmark::DoNotOptimize(evenness_score(pooled));
  }
}
BENCHMARK(BM_EvennessScore)->Arg(1000)->Arg(100000);

void BM_SuiteSearchTop7(benchmark::State& state) {
  Rng rng(29);
  std::vector<AlternativeMatrix> scenarios;
  std::vector<std::string> names;
  std::vector<Direction> dirs;
  for (const auto& d : metric_registry()) {
    names.emplace_back(d.name);
    dirs.push_back(d.direction);
  }
  for (int s = 0; s < 16; ++s) {
    AlternativeMatrix m;
    m.metrics = names;
    m.directions = dirs;
    m.x.assign(6, std::vector<double>(names.size()));
    for (auto& row : m.x) {
      for (auto& v : row) v = 0.05 + rng.next_double();
    }
    scenarios.push_back(std::move(m));
  }
  const std::vector<std::string> top7{
      "adversary_overall_success", "amount_leaked_information", "adversary_success_rate",
      "absolute_error", "pearson_correlation", "normalized_variance", "incorrectness"};
  for (auto _ : state) {
    benchmark::DoNotOptimize(search_suites(top7, scenarios));
  }
}
BENCHMARK(BM_SuiteSearchTop7);

}  // namespace
