#include <benchmark/benchmark.h>

#include <string>

#include "conlog/proof_script.hpp"
#include "conlog/io.hpp"
#include "conlog/random.hpp"
#include "conlog/semantics.hpp"
#include "conlog/syntax.hpp"

using namespace conlog;

namespace {

// Conjunction of `vars` s1 variables implied by its own closure: valid, so
// every valuation is visited. The exponent is vars * |G|.
void BM_FrameValidity(benchmark::State& state) {
  const auto vars = static_cast<int>(state.range(0));
  Rng rng(3);
  const SortedFrame f = context_to_frame(random_context(rng, 4, 4, 4, 4));
  std::string text = "x0";
  for (int i = 1; i < vars; ++i) text += " & x" + std::to_string(i);
  const Formula phi = parse_formula(text + " -> box- dia (" + text + ")", kObjects);
  for (auto _ : state) benchmark::DoNotOptimize(check_frame_validity(f, phi, std::uint64_t{1} << 24));
  state.counters["valuations"] = static_cast<double>(std::uint64_t{1} << (4 * vars));
}
BENCHMARK(BM_FrameValidity)->DenseRange(1, 5)->Unit(benchmark::kMicrosecond);

void BM_TruthSet(benchmark::State& state) {
  Rng rng(9);
  const auto k = random_context(rng, 32, 32, 32, 32);
  const SortedFrame f = context_to_frame(k);
  FormulaShape shape;
  shape.depth = static_cast<std::size_t>(state.range(0));
  const Formula phi = random_formula(rng, kObjects, shape);
  const Model m(f, random_valuation(rng, f, shape.variables));
  for (auto _ : state) benchmark::DoNotOptimize(truth_set(m, phi));
}
BENCHMARK(BM_TruthSet)->DenseRange(2, 8, 2);

void BM_CheckProof(benchmark::State& state) {
  const ProofScript kf = parse_proof_script(read_file(std::string(CONLOG_DATA_DIR) + "/proofs/antitone_kf.proof"));
  const ProofScript kb = translate_script(kf);
  for (auto _ : state) benchmark::DoNotOptimize(check_script(kb));
}
BENCHMARK(BM_CheckProof);

}  // namespace
