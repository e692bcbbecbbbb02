#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "conlog/signature.hpp"
#include "conlog/sort.hpp"

namespace conlog {

enum class Connective : std::uint8_t {
  var,
  bot,
  top,
  neg,
  conj,
  disj,
  imp,
  iff,
  modal,  ///< sigma(phi_1, ..., phi_n)
  dual,   ///< sigma^box(phi_1, ..., phi_n); existential modalities only
};

/// Immutable, shared, well-sorted formula. Every constructor checks sorts, so
/// an ill-sorted tree cannot be built.
class Formula {
 public:
  static Formula var(std::string name, Sort sort);
  static Formula bot(Sort sort);
  static Formula top(Sort sort);
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula modal(std::shared_ptr<const Modality> m, std::vector<Formula> args);
  static Formula dual(std::shared_ptr<const Modality> m, std::vector<Formula> args);

  Connective op() const { return node_->op; }
  Sort sort() const { return node_->sort; }
  /// Variable name; empty for other nodes.
  const std::string& name() const { return node_->name; }
  /// Modality of a modal/dual node; null otherwise.
  const std::shared_ptr<const Modality>& modality() const { return node_->modality; }
  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& child(std::size_t i) const { return node_->children.at(i); }

  bool is_modal() const { return op() == Connective::modal || op() == Connective::dual; }

  std::size_t hash() const { return node_->hash; }
  /// Number of nodes.
  std::size_t size() const { return node_->size; }
  /// Stable identity of the shared node, for memoization.
  const void* identity() const { return node_.get(); }

  bool operator==(const Formula& other) const;

 private:
  struct Node {
    Connective op;
    Sort sort;
    std::string name;
    std::shared_ptr<const Modality> modality;
    std::vector<Formula> children;
    std::size_t hash = 0;
    std::size_t size = 1;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Connective op, Sort sort, std::string name,
                      std::shared_ptr<const Modality> modality, std::vector<Formula> children);
  static Formula binary(Connective op, Formula a, Formula b);
  static Formula apply(Connective op, std::shared_ptr<const Modality> m, std::vector<Formula> args);

  std::shared_ptr<const Node> node_;
};

/// Propositional variable identity: name plus sort (the families P_s are
/// disjoint, so the same name under two sorts is two variables).
struct VarKey {
  std::string name;
  Sort sort;

  auto operator<=>(const VarKey& other) const {
    if (auto c = sort <=> other.sort; c != 0) return c;
    return name <=> other.name;
  }
  bool operator==(const VarKey&) const = default;
};

/// Maps variables (or scheme metavariables) to formulas of the same sort.
using Substitution = std::map<VarKey, Formula>;

/// Recomputes the sort bottom-up from the leaves (cross-check of the cache).
Sort recompute_sort(const Formula& f);

/// Distinct variables, ordered by (sort, name).
std::vector<VarKey> variables(const Formula& f);
std::vector<VarKey> variables(const std::vector<Formula>& fs);

/// Maximal nesting of modal/dual nodes.
std::size_t modal_depth(const Formula& f);

/// Simultaneous replacement of variables. Throws SortError when a
/// replacement's sort differs from its variable's.
Formula substitute(const Formula& f, const Substitution& subst);

/// Rewrites the defined connectives into the primitive ones:
/// top -> ~bot, a|b -> ~(~a & ~b), a->b -> ~(a & ~b),
/// a<->b -> ~(a & ~b) & ~(b & ~a).
Formula normalize(const Formula& f);

/// True iff every modality occurring in f belongs to `sig`.
bool uses_only(const Formula& f, const Signature& sig);

/// Built-in two-sorted constructors (dia/box/dia-/box-, boxm/boxm-).
namespace ts {
Formula dia(Formula f);
Formula box(Formula f);
Formula dia_inv(Formula f);
Formula box_inv(Formula f);
Formula win(Formula f);
Formula win_inv(Formula f);
Formula p1(std::string name);  ///< variable of sort s1
Formula p2(std::string name);  ///< variable of sort s2
}  // namespace ts

}  // namespace conlog

template <>
struct std::hash<conlog::Formula> {
  std::size_t operator()(const conlog::Formula& f) const noexcept { return f.hash(); }
};
