#include <benchmark/benchmark.h>

#include <graphpriv/anonymizers.hpp>
#include <graphpriv/deanonymizers.hpp>

#include "helpers.hpp"

using namespace graphpriv;
using namespace testing_fixtures;

namespace {

const AuxiliaryKnowledge& bench_knowledge() {
  static const AuxiliaryKnowledge k = [] {
    Graph g = largest_connected_component(preferential_attachment(1000, 3, 3));
    AnonymizerConfig cfg;
    cfg.kind = AnonymizerKind::edge_switch;
    cfg.seed = 1;
    auto [anon, mapping] = anonymize(g, cfg);
    return make_knowledge(g, anon, mapping, 0.85, 50, 5);
  }();
  return k;
}

void bench_attack(benchmark::State& state, DeanonKind kind) {
  auto cfg = DeanonConfig::defaults_for(kind);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    cfg.seed = ++seed;
    benchmark::DoNotOptimize(deanonymize(bench_knowledge(), cfg));
  }
}

void BM_DeanonNS(benchmark::State& state) { bench_attack(state, DeanonKind::ns); }
void BM_DeanonKL(benchmark::State& state) { bench_attack(state, DeanonKind::kl); }
void BM_DeanonYG(benchmark::State& state) { bench_attack(state, DeanonKind::yg); }
void BM_DeanonDV(benchmark::State& state) { bench_attack(state, DeanonKind::dv); }
void BM_DeanonJLSB(benchmark::State& state) { bench_attack(state, DeanonKind::jlsb); }
void BM_DeanonADA(benchmark::State& state) { bench_attack(state, DeanonKind::ada); }

BENCHMARK(BM_DeanonNS);
BENCHMARK(BM_DeanonKL);
BENCHMARK(BM_DeanonYG);
BENCHMARK(BM_DeanonDV);
BENCHMARK(BM_DeanonJLSB);
BENCHMARK(BM_DeanonADA);

}  // namespace
