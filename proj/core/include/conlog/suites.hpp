#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "conlog/context.hpp"
#include "conlog/semantics.hpp"

namespace conlog {

struct SuiteLine {
  std::string label;
  bool passed = true;
  /// Bijection, instance count or first failure.
  std::string detail;
};

struct SuiteReport {
  std::string name;
  std::vector<SuiteLine> lines;
  bool passed() const;
};

/// Names accepted by run_suite, in the order "all" runs them.
const std::vector<std::string>& suite_names();

/// Runs one suite on `context`:
///   yao          complement isomorphisms of the three concept lattices
///   translation  truth-set identities and rho semantics on seeded random
///                formulas and valuations
///   lattice      enumeration against the fixpoint scan, lattice laws, and
///                the quotient lattices of generated formula pairs
///   iso          the h / f maps between the quotient lattices
/// Throws Error for an unknown name and BudgetExceeded when a check would
/// exceed `budget`.
SuiteReport run_suite(std::string_view name, const FormalContext& context, std::uint64_t seed,
                      std::uint64_t budget = kDefaultBudget);

}  // namespace conlog
