#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "conlog/context.hpp"

namespace conlog {

/// Formal (+, -), property-oriented (dia, box-) and object-oriented
/// (box, dia-) concepts.
enum class ConceptKind { FC, PC, OC };

std::string_view kind_name(ConceptKind kind);
/// "fc", "pc", "oc" in either case; throws Error otherwise.
ConceptKind parse_kind(std::string_view text);

enum class Side { extent, intent };

struct SemanticConcept {
  SortedSubset extent;
  SortedSubset intent;

  bool operator==(const SemanticConcept&) const = default;
};

/// Composite operator whose fixpoints are the extents (intents) of `kind`:
///   FC  A -> A+-        B -> B-+
///   PC  A -> box- dia A  B -> dia box- B
///   OC  A -> dia- box A  B -> box dia- B
/// (each composite applies its left operator last). The PC extent and OC
/// intent composites are closure operators; the PC intent and OC extent
/// composites are kernel operators (contractive). All are idempotent.
/// Throws SortError when `subset` does not have the sort of `side`.
SortedSubset closure(ConceptKind kind, Side side, const SortedSubset& subset,
                     const FormalContext& context);

/// Intent of an extent: A+ (FC), dia A (PC) or box A (OC).
SortedSubset derive_intent(ConceptKind kind, const SortedSubset& extent, const FormalContext& context);
/// Extent of an intent: B- (FC), box- B (PC) or dia- B (OC).
SortedSubset derive_extent(ConceptKind kind, const SortedSubset& intent, const FormalContext& context);

/// True iff (extent, intent) satisfies the two defining equations of `kind`.
bool is_concept(ConceptKind kind, const SemanticConcept& c, const FormalContext& context);

/// All concepts of `kind`, ordered lectically by extent (A < B iff the
/// smallest element of the symmetric difference lies in B). FC and PC run
/// NextClosure on the extent closure over G; OC runs it on the intent
/// closure over M and sorts the resulting extents.
std::vector<SemanticConcept> enumerate_concepts(const FormalContext& context, ConceptKind kind);

/// Fixpoint scan of all 2^|G| object sets, same order. Throws
/// DimensionError beyond 20 objects.
std::vector<SemanticConcept> brute_force_concepts(const FormalContext& context, ConceptKind kind);

class ConceptLattice {
 public:
  ConceptKind kind() const { return kind_; }
  const std::vector<SemanticConcept>& concepts() const { return concepts_; }
  std::size_t size() const { return concepts_.size(); }

  /// Extent inclusion.
  bool leq(std::size_t a, std::size_t b) const { return leq_[a][b]; }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a][b]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a][b]; }
  std::size_t top() const { return top_; }
  std::size_t bottom() const { return bottom_; }
  /// Covering pairs (lower, upper), sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const { return covers_; }

  /// Index of the concept with this extent.
  std::optional<std::size_t> find_extent(const SortedSubset& extent) const;

 private:
  friend ConceptLattice build_lattice(std::vector<SemanticConcept> concepts, ConceptKind kind,
                                      const FormalContext& context);

  ConceptKind kind_ = ConceptKind::FC;
  std::vector<SemanticConcept> concepts_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<std::size_t>> meet_;
  std::vector<std::vector<std::size_t>> join_;
  std::size_t top_ = 0;
  std::size_t bottom_ = 0;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
};

/// Order by extent inclusion, meets and joins by the closure formulas
/// (FC, PC: meet = intersection, join = closure of the union; OC: join =
/// union, meet = kernel of the intersection). Throws LatticeError when a
/// meet or join lands outside the list or top/bottom are missing.
ConceptLattice build_lattice(std::vector<SemanticConcept> concepts, ConceptKind kind,
                             const FormalContext& context);

/// Checks commutativity, associativity, absorption and idempotence of the
/// tables and that meet/join are the greatest lower / least upper bounds.
/// Returns an empty string on success, otherwise a description.
std::string check_lattice_laws(const ConceptLattice& lattice);

/// One clause of the complement isomorphisms.
struct IsoClause {
  std::string name;  ///< "a", "b" or "c"
  std::string statement;
  bool passed = false;
  /// "structural" when the candidate map worked, "search" when the
  /// exhaustive fallback found the bijection, empty on failure.
  std::string method;
  /// bijection[i] = index in the target list of the image of source i.
  std::vector<std::size_t> bijection;
  std::string failure;
};

struct YaoReport {
  std::vector<IsoClause> clauses;
  bool passed() const;
};

/// (a) FC(K) ~ PC(K^c) via (A, B) -> (A, M\B);
/// (b) PC(K) ~dual OC(K) via (A, B) -> (G\A, M\B);
/// (c) FC(K) ~dual OC(K^c) via (A, B) -> (G\A, B).
/// Each map is checked for bijectivity and (reversed) order preservation;
/// when the candidate fails, an exhaustive search over order (anti-)
/// isomorphisms is tried for lattices of at most 12 elements.
YaoReport verify_yao_isomorphisms(const FormalContext& context);

}  // namespace conlog
