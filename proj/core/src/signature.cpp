#include "conlog/signature.hpp"

#include <charconv>
#include <set>

#include "conlog/error.hpp"

namespace conlog {

Signature::Signature(std::vector<std::string> sort_names, std::vector<Modality> modalities)
    : sort_names_(std::move(sort_names)) {
  if (sort_names_.empty()) throw SignatureError("a signature needs at least one sort");
  if (sort_names_.size() > 255) throw SignatureError("too many sorts");
  std::set<std::string> seen;
  for (auto& m : modalities) {
    if (m.name.empty()) throw SignatureError("modality with empty name");
    if (!seen.insert(m.name).second) throw SignatureError("duplicate modality '" + m.name + "'");
    if (m.arguments.empty()) throw SignatureError("modality '" + m.name + "' has arity 0");
    if (m.kind == ModalityKind::window && m.arguments.size() != 1) {
      throw SignatureError("window modality '" + m.name + "' must be unary");
    }
    if (m.result.index >= sort_names_.size()) {
      throw SignatureError("modality '" + m.name + "' has an undeclared result sort");
    }
    for (Sort s : m.arguments) {
      if (s.index >= sort_names_.size()) {
        throw SignatureError("modality '" + m.name + "' has an undeclared argument sort");
      }
    }
    modalities_.push_back(std::make_shared<const Modality>(std::move(m)));
  }
  for (const auto& m : modalities_) {
    if (m->converse.empty()) continue;
    auto c = find(m->converse);
    if (!c) throw SignatureError("converse '" + m->converse + "' of '" + m->name + "' is undeclared");
    if (m->arity() != 1 || c->arity() != 1 || c->arguments[0] != m->result ||
        c->result != m->arguments[0] || c->converse != m->name || c->kind != m->kind) {
      throw SignatureError("'" + m->name + "' and '" + c->name + "' are not a converse pair");
    }
  }
}

namespace {

Modality unary(std::string_view name, Sort from, Sort to, ModalityKind kind,
               std::string_view converse, std::string_view dual) {
  return Modality{std::string(name), {from}, to, kind, std::string(converse), std::string(dual)};
}

}  // namespace

const Signature& Signature::rough_set() {
  static const Signature sig(
      {"s1", "s2"},
      {unary(names::kDia, kObjects, kAttributes, ModalityKind::existential, names::kDiaInv, "box"),
       unary(names::kDiaInv, kAttributes, kObjects, ModalityKind::existential, names::kDia, "box-")});
  return sig;
}

const Signature& Signature::window() {
  static const Signature sig(
      {"s1", "s2"},
      {unary(names::kWin, kObjects, kAttributes, ModalityKind::window, names::kWinInv, ""),
       unary(names::kWinInv, kAttributes, kObjects, ModalityKind::window, names::kWin, "")});
  return sig;
}

const Signature& Signature::two_sorted() {
  static const Signature sig(
      {"s1", "s2"},
      {unary(names::kDia, kObjects, kAttributes, ModalityKind::existential, names::kDiaInv, "box"),
       unary(names::kDiaInv, kAttributes, kObjects, ModalityKind::existential, names::kDia, "box-"),
       unary(names::kWin, kObjects, kAttributes, ModalityKind::window, names::kWinInv, ""),
       unary(names::kWinInv, kAttributes, kObjects, ModalityKind::window, names::kWin, "")});
  return sig;
}

std::optional<Sort> Signature::find_sort(std::string_view text) const {
  for (std::size_t i = 0; i < sort_names_.size(); ++i) {
    if (sort_names_[i] == text) return Sort{static_cast<std::uint8_t>(i)};
  }
  std::size_t pos = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), pos);
  if (ec == std::errc() && ptr == text.data() + text.size() && pos >= 1 &&
      pos <= sort_names_.size()) {
    return Sort{static_cast<std::uint8_t>(pos - 1)};
  }
  return std::nullopt;
}

std::shared_ptr<const Modality> Signature::find(std::string_view name) const {
  for (const auto& m : modalities_) {
    if (m->name == name) return m;
  }
  return nullptr;
}

std::shared_ptr<const Modality> Signature::at(std::string_view name) const {
  auto m = find(name);
  if (!m) throw SignatureError("modality '" + std::string(name) + "' is not in the signature");
  return m;
}

std::shared_ptr<const Modality> Signature::find_by_dual_keyword(std::string_view keyword) const {
  for (const auto& m : modalities_) {
    if (!m->dual_keyword.empty() && m->dual_keyword == keyword) return m;
  }
  return nullptr;
}

bool Signature::contains(const Modality& m) const {
  auto own = find(m.name);
  return own && own->arguments == m.arguments && own->result == m.result && own->kind == m.kind;
}

}  // namespace conlog
