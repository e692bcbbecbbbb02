#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "conlog/bitset.hpp"
#include "conlog/sort.hpp"

namespace conlog {

/// A subset of one sort's carrier: objects (s1) or attributes (s2).
struct SortedSubset {
  Sort sort = kObjects;
  BitSet bits;

  static SortedSubset empty(Sort sort, std::size_t size) { return {sort, BitSet(size)}; }
  static SortedSubset full(Sort sort, std::size_t size) { return {sort, BitSet::full(size)}; }

  bool operator==(const SortedSubset&) const = default;
};

/// The six set-level operators on a context.
///
/// plus (A -> A+), poss (diamond) and nec (box) take object sets to attribute
/// sets; minus (B -> B-), poss_inv and nec_inv go the other way.
enum class OperatorKind { plus, minus, poss, nec, poss_inv, nec_inv };

Sort input_sort(OperatorKind kind);
Sort output_sort(OperatorKind kind);
std::string_view operator_name(OperatorKind kind);

/// Finite formal context (G, M, I). Immutable after construction; the
/// incidence is kept both row-wise (I(g) over M) and column-wise (I^-1(m)
/// over G) so every operator is a word-parallel scan.
class FormalContext {
 public:
  /// Throws DimensionError when the matrix shape disagrees with the name lists
  /// or a carrier is empty, and Error on duplicate names within a sort.
  FormalContext(std::vector<std::string> objects, std::vector<std::string> attributes,
                const std::vector<BitSet>& rows);

  /// Convenience for tests and fixtures: rows given as "X." strings.
  static FormalContext from_rows(std::vector<std::string> objects,
                                 std::vector<std::string> attributes,
                                 const std::vector<std::string>& rows);

  std::size_t object_count() const { return objects_.size(); }
  std::size_t attribute_count() const { return attributes_.size(); }
  std::size_t carrier_size(Sort sort) const;

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& attributes() const { return attributes_; }
  const std::vector<std::string>& names(Sort sort) const;

  bool incident(std::size_t g, std::size_t m) const { return rows_[g].test(m); }
  /// I(g) as a subset of M.
  const BitSet& row(std::size_t g) const { return rows_[g]; }
  /// I^-1(m) as a subset of G.
  const BitSet& column(std::size_t m) const { return columns_[m]; }
  const std::vector<BitSet>& rows() const { return rows_; }

  SortedSubset empty_set(Sort sort) const { return SortedSubset::empty(sort, carrier_size(sort)); }
  SortedSubset full_set(Sort sort) const { return SortedSubset::full(sort, carrier_size(sort)); }
  /// Subset from names; throws Error on an unknown name.
  SortedSubset subset(Sort sort, const std::vector<std::string>& names) const;
  /// Index of a name in the carrier of `sort`; throws Error when absent.
  std::size_t index_of(Sort sort, std::string_view name) const;

  bool operator==(const FormalContext&) const = default;

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> attributes_;
  std::vector<BitSet> rows_;
  std::vector<BitSet> columns_;
};

/// Image of `subset` under `kind`. Throws SortError when the subset has the
/// wrong sort and DimensionError when it is sized for another context.
SortedSubset apply_operator(OperatorKind kind, const SortedSubset& subset,
                            const FormalContext& context);

/// (G, M, I^c).
FormalContext complement_context(const FormalContext& context);

/// Set complement within the carrier.
SortedSubset complement(const SortedSubset& subset);

/// Checks the duality of the necessity/possibility pair that `kind` belongs
/// to: nec(S) == complement(poss(complement(S))). For plus/minus the check is
/// the Galois pair identity S ⊆ S+- (resp. S ⊆ S-+).
bool duality_check(OperatorKind kind, const SortedSubset& subset, const FormalContext& context);

/// "{g1, g2}" using the context's names.
std::string format_subset(const SortedSubset& subset, const FormalContext& context);

}  // namespace conlog
