#include <benchmark/benchmark.h>

#include "conlog/io.hpp"
#include "conlog/lattice.hpp"
#include "conlog/random.hpp"

using namespace conlog;

namespace {

FormalContext square(std::size_t n, unsigned density) {
  Rng rng(n * 131 + density);
  return random_context(rng, n, n, n, n, density);
}

void BM_NextClosure(benchmark::State& state) {
  const auto kind = static_cast<ConceptKind>(state.range(1));
  const auto k = square(static_cast<std::size_t>(state.range(0)), 40);
  std::size_t n = 0;
  for (auto _ : state) {
    auto cs = enumerate_concepts(k, kind);
    n = cs.size();
    benchmark::DoNotOptimize(cs);
  }
  state.counters["concepts"] = static_cast<double>(n);
  state.SetLabel(std::string(kind_name(kind)));
}
BENCHMARK(BM_NextClosure)->ArgsProduct({{8, 16, 24, 32}, {0, 1, 2}});

void BM_BruteForce(benchmark::State& state) {
  const auto k = square(static_cast<std::size_t>(state.range(0)), 40);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_concepts(k, ConceptKind::FC));
}
BENCHMARK(BM_BruteForce)->DenseRange(8, 16, 4);

void BM_Lattice(benchmark::State& state) {
  const auto k = square(static_cast<std::size_t>(state.range(0)), 40);
  const auto cs = enumerate_concepts(k, ConceptKind::FC);
  for (auto _ : state) benchmark::DoNotOptimize(build_lattice(cs, ConceptKind::FC, k));
  state.counters["concepts"] = static_cast<double>(cs.size());
}
BENCHMARK(BM_Lattice)->DenseRange(8, 20, 4);

void BM_Yao(benchmark::State& state) {
  const auto k = load_context(std::string(CONLOG_DATA_DIR) + "/contexts/planets.cxt");
  for (auto _ : state) benchmark::DoNotOptimize(verify_yao_isomorphisms(k));
}
BENCHMARK(BM_Yao);

}  // namespace
