#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conlog/formula.hpp"
#include "conlog/frame.hpp"
#include "conlog/lattice.hpp"
#include "conlog/semantics.hpp"

namespace conlog {

/// The six formula classes. Each is cut out by one frame-valid
/// biconditional:
///   PC_ext  box- dia phi <-> phi     PC_int  dia box- psi <-> psi
///   OC_ext  dia- box phi <-> phi     OC_int  box dia- psi <-> psi
///   FC_ext  boxm- boxm phi <-> phi   FC_int  boxm boxm- psi <-> psi
enum class FormulaClass { PC_ext, PC_int, OC_ext, OC_int, FC_ext, FC_int };

std::string_view class_name(FormulaClass c);
/// "pc_ext", "PC-int", "fc_ext", ...; throws Error otherwise.
FormulaClass parse_class(std::string_view text);
FormulaClass class_of(ConceptKind kind, Side side);
Sort class_sort(FormulaClass c);

/// The defining biconditional of `c` for `f`. Throws SortError when `f`
/// has the wrong sort.
Formula class_condition(const Formula& f, FormulaClass c);

/// Exhaustive frame validity of class_condition. Propagates BudgetExceeded.
CheckResult check_member_class(const Formula& f, FormulaClass c, const SortedFrame& frame,
                               std::uint64_t budget = kDefaultBudget);
bool member_class(const Formula& f, FormulaClass c, const SortedFrame& frame,
                  std::uint64_t budget = kDefaultBudget);

/// Extent formula (sort s1) and intent formula (sort s2).
struct LogicalPair {
  Formula extent;
  Formula intent;

  bool operator==(const LogicalPair&) const = default;
};

/// The four validities a pair of `kind` must satisfy: both class
/// conditions, then the links
///   PC  phi <-> box- psi,  dia phi <-> psi
///   OC  phi <-> dia- psi,  box phi <-> psi
///   FC  phi <-> boxm- psi, boxm phi <-> psi
/// Throws SortError unless the pair is (s1, s2).
std::vector<Formula> pair_conditions(const LogicalPair& pair, ConceptKind kind);

struct PairCheck {
  bool holds = true;
  /// First condition that is not frame-valid, with its counterexample.
  std::optional<Formula> failed_condition;
  std::optional<Counterexample> counterexample;
};

PairCheck check_member_pair(const LogicalPair& pair, ConceptKind kind, const SortedFrame& frame,
                            std::uint64_t budget = kDefaultBudget);
bool member_pair(const LogicalPair& pair, ConceptKind kind, const SortedFrame& frame,
                 std::uint64_t budget = kDefaultBudget);

/// (box- dia s, dia s), (dia- box s, box s) or (boxm- boxm s, boxm s).
/// Throws SortError unless `seed` has sort s1.
LogicalPair generate_pair(const Formula& seed, ConceptKind kind);

enum class PairDirection {
  /// (phi, psi) -> (~phi, ~psi): PC of K to OC of the same K.
  pc_to_oc,
  /// (phi, psi) -> (rho phi, ~rho psi): FC of K to PC of K^c.
  fc_to_pc_of_complement,
  /// (phi, psi) -> (~rho phi, rho psi): FC of K to OC of K^c.
  fc_to_oc_of_complement,
};

std::string_view direction_name(PairDirection d);
/// "pc-oc", "fc-pc", "fc-oc" (underscores accepted); throws Error otherwise.
PairDirection parse_direction(std::string_view text);
/// Kinds of the source and target pairs.
ConceptKind direction_source(PairDirection d);
ConceptKind direction_target(PairDirection d);
/// Whether the target lives on the complemented frame.
bool direction_complements(PairDirection d);

LogicalPair transform_pair(const LogicalPair& pair, PairDirection d);

/// Frame equivalence of the extent formulas (the class relation for
/// PC, OC or FC pairs). The intents are compared as well and must agree
/// for members; a disagreement throws InvariantViolation.
bool equiv_pairs(const LogicalPair& a, const LogicalPair& b, const SortedFrame& frame,
                 std::uint64_t budget = kDefaultBudget);

/// Which quotient operations to use. `fc_pattern` copies the FC pattern to
/// all three kinds (meet by conjunction of extents, join by conjunction of
/// intents); it leaves the class when PC intents or OC extents are not
/// closed under intersection. `corrected` takes the OC meet through the
/// intents and the PC/OC joins through disjunction.
enum class QuotientVariant { corrected, fc_pattern };

///   FC  (phi & phi', boxm(phi & phi'))
///   PC  (phi & phi', dia(phi & phi'))
///   OC  corrected (dia-(psi & psi'), psi & psi'); fc_pattern (phi & phi', box(phi & phi'))
LogicalPair quotient_meet(const LogicalPair& a, const LogicalPair& b, ConceptKind kind,
                          QuotientVariant variant = QuotientVariant::corrected);
///   FC  (boxm-(psi & psi'), psi & psi')
///   PC  corrected (box-(psi | psi'), psi | psi'); fc_pattern (box-(psi & psi'), psi & psi')
///   OC  corrected (phi | phi', box(phi | phi')); fc_pattern (dia-(psi & psi'), psi & psi')
LogicalPair quotient_join(const LogicalPair& a, const LogicalPair& b, ConceptKind kind,
                          QuotientVariant variant = QuotientVariant::corrected);

struct LawCheck {
  std::string law;
  bool passed = true;
  std::size_t instances = 0;
  /// First failing instance, in concrete syntax.
  std::string witness;
};

struct LawReport {
  std::vector<LawCheck> laws;
  bool passed() const;
  /// Entry for `law`, or null.
  const LawCheck* find(std::string_view law) const;
};

/// Membership of every pair and of every meet/join result; well-definedness
/// (operations on (a, b) agree with operations on representatives rebuilt
/// from the other component: (box- psi, psi) and so on, and the doubled
/// (phi & phi, psi & psi)); commutativity, associativity, both absorption
/// laws and idempotence, all up to equivalence on `frame`.
LawReport verify_quotient_lattice(const std::vector<LogicalPair>& pairs, ConceptKind kind,
                                  const SortedFrame& frame,
                                  std::uint64_t budget = kDefaultBudget,
                                  QuotientVariant variant = QuotientVariant::corrected);

/// Checks on the FC family of K, with F = frame(K), Fc = frame(K^c):
///   a: h(phi, psi) = (rho phi, rho ~psi) lands in PC on Fc, reflects and
///      preserves equivalence, and commutes with meet and join;
///   b: f(phi, psi) = (~phi, ~psi) maps the h-image into OC on Fc, reflects
///      and preserves equivalence, and swaps meet and join;
///   c: the composite f o h, FC on F to OC on Fc, swapping meet and join.
/// Law names carry the clause prefix ("a: meet").
LawReport verify_isomorphisms(const std::vector<LogicalPair>& pairs_fc, const FormalContext& context,
                              std::uint64_t budget = kDefaultBudget,
                              QuotientVariant variant = QuotientVariant::corrected);

}  // namespace conlog
