#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "conlog/context.hpp"
#include "conlog/formula.hpp"
#include "conlog/frame.hpp"
#include "conlog/semantics.hpp"

namespace conlog {

/// Seeded generator with its own range reduction, so sequences are the same
/// under every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [lo, hi] (rejection sampling on the raw 64-bit output).
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi);
  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return between(0, den - 1) < num; }

 private:
  std::mt19937_64 engine_;
};

/// Objects g1.., attributes m1..; each incidence bit set with probability
/// `density` percent.
FormalContext random_context(Rng& rng, std::size_t min_objects, std::size_t max_objects,
                             std::size_t min_attributes, std::size_t max_attributes,
                             unsigned density = 50);

enum class Dialect {
  rough_set,  ///< dia, box, dia-, box-
  window,     ///< boxm, boxm-
};

struct FormulaShape {
  Dialect dialect = Dialect::rough_set;
  /// Bound on the nesting depth (and so on the modal depth).
  std::size_t depth = 4;
  /// Variables leaves are drawn from; leaves of a sort with no variable
  /// become constants.
  std::vector<VarKey> variables = {{"p", kObjects}, {"q", kAttributes}, {"r", kObjects}};
};

Formula random_formula(Rng& rng, Sort sort, const FormulaShape& shape);

/// Every variable gets a uniformly random subset of its carrier.
Valuation random_valuation(Rng& rng, const SortedFrame& frame, const std::vector<VarKey>& variables);

}  // namespace conlog
