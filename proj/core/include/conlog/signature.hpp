#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conlog/sort.hpp"

namespace conlog {

/// How a modality is read in a model: the existential (diamond) clause over
/// its relation, or the window (sufficiency) clause.
enum class ModalityKind { existential, window };

/// sigma : s_1 ... s_n -> s.
struct Modality {
  std::string name;
  std::vector<Sort> arguments;
  Sort result;
  ModalityKind kind = ModalityKind::existential;
  /// Name of the converse modality in a bidirectional signature, or empty.
  std::string converse;
  /// Concrete-syntax keyword for the dual sigma^box of a unary existential
  /// modality ("box" for "dia"), or empty.
  std::string dual_keyword;

  std::size_t arity() const { return arguments.size(); }
};

/// Many-sorted signature (S, Sigma). Modality names are unique; every arity
/// sort is drawn from S; window modalities are unary.
class Signature {
 public:
  Signature(std::vector<std::string> sort_names, std::vector<Modality> modalities);

  /// ({s1, s2}, {dia: s1 -> s2, dia-: s2 -> s1}); box and box- are the duals.
  static const Signature& rough_set();
  /// ({s1, s2}, {boxm: s1 -> s2, boxm-: s2 -> s1}) with window semantics.
  static const Signature& window();
  /// Union of the two: the language a context frame interprets.
  static const Signature& two_sorted();

  std::size_t sort_count() const { return sort_names_.size(); }
  const std::vector<std::string>& sort_names() const { return sort_names_; }
  const std::string& sort_name(Sort s) const { return sort_names_.at(s.index); }
  /// Accepts a sort name or its 1-based position ("s2" or "2").
  std::optional<Sort> find_sort(std::string_view text) const;

  const std::vector<std::shared_ptr<const Modality>>& modalities() const { return modalities_; }
  std::shared_ptr<const Modality> find(std::string_view name) const;
  /// Throws SignatureError when absent.
  std::shared_ptr<const Modality> at(std::string_view name) const;
  /// Modality whose dual keyword is `keyword`, if any.
  std::shared_ptr<const Modality> find_by_dual_keyword(std::string_view keyword) const;

  /// True iff a modality with this name and the same arity/kind is declared.
  bool contains(const Modality& m) const;

 private:
  std::vector<std::string> sort_names_;
  std::vector<std::shared_ptr<const Modality>> modalities_;
};

/// Names of the built-in modalities.
namespace names {
inline constexpr std::string_view kDia = "dia";
inline constexpr std::string_view kDiaInv = "dia-";
inline constexpr std::string_view kWin = "boxm";
inline constexpr std::string_view kWinInv = "boxm-";
}  // namespace names

}  // namespace conlog
