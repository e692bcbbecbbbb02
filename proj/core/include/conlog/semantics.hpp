#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conlog/context.hpp"
#include "conlog/formula.hpp"
#include "conlog/frame.hpp"

namespace conlog {

using Valuation = std::map<VarKey, SortedSubset>;

/// A frame together with a valuation of (some of) the variables.
class Model {
 public:
  /// Throws ValuationError when an assigned subset has the wrong sort or is
  /// sized for another carrier.
  Model(SortedFrame frame, Valuation valuation);

  const SortedFrame& frame() const { return frame_; }
  const Valuation& valuation() const { return valuation_; }

 private:
  SortedFrame frame_;
  Valuation valuation_;
};

/// {w in W_sort(f) | model, w |= f}. Diamonds read existentially over their
/// relation, duals universally, window modalities by
/// w |= boxm phi iff every u |= phi has R(w, u).
///
/// Throws ValuationError for an unassigned variable and SignatureError for a
/// modality the frame does not interpret.
SortedSubset truth_set(const Model& model, const Formula& f);

/// Membership of `world` in truth_set. Throws SortError when `sort` is not
/// the formula's sort and DimensionError when the world is out of range.
bool satisfies(const Model& model, Sort sort, std::size_t world, const Formula& f);

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 20;

/// Where an exhaustive check failed.
struct Counterexample {
  Valuation valuation;
  /// Sort and index of the world at which the conclusion fails.
  Sort sort;
  std::size_t world = 0;
};

struct CheckResult {
  bool holds = true;
  std::optional<Counterexample> counterexample;
  /// log2 of the number of valuations enumerated.
  std::size_t exponent = 0;
};

/// Number of valuations (as a power of two) the check of `formulas` needs:
/// the summed carrier sizes of the distinct variables occurring in them.
std::size_t valuation_exponent(const SortedFrame& frame, const std::vector<Formula>& formulas);

/// Exact frame validity by enumerating every valuation of the variables
/// occurring in `f`. Refuses with BudgetExceeded when their number exceeds
/// `budget`. The counterexample is the first failure in valuation order.
CheckResult check_frame_validity(const SortedFrame& frame, const Formula& f,
                                 std::uint64_t budget = kDefaultBudget);

/// Local consequence: every (valuation, world) satisfying all premises
/// satisfies the conclusion. All formulas must share one sort (SortError).
CheckResult check_local_consequence(const SortedFrame& frame, const std::vector<Formula>& premises,
                                    const Formula& conclusion,
                                    std::uint64_t budget = kDefaultBudget);

/// Global consequence: every valuation making all premises true everywhere
/// makes the conclusion true everywhere. Premises may mix sorts.
CheckResult check_global_consequence(const SortedFrame& frame,
                                     const std::vector<Formula>& premises,
                                     const Formula& conclusion,
                                     std::uint64_t budget = kDefaultBudget);

bool frame_valid(const SortedFrame& frame, const Formula& f, std::uint64_t budget = kDefaultBudget);
bool local_consequence(const SortedFrame& frame, const std::vector<Formula>& premises,
                       const Formula& conclusion, std::uint64_t budget = kDefaultBudget);

/// "p:s1 = {g1}, q:s2 = {}" with the frame's world names.
std::string format_valuation(const Valuation& valuation, const SortedFrame& frame);

}  // namespace conlog
