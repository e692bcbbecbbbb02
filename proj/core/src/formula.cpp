#include "conlog/formula.hpp"

#include <algorithm>
#include <set>

#include "conlog/error.hpp"

namespace conlog {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::string sort_label(Sort s) { return default_sort_name(s); }

}  // namespace

Formula Formula::make(Connective op, Sort sort, std::string name,
                      std::shared_ptr<const Modality> modality, std::vector<Formula> children) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->sort = sort;
  node->name = std::move(name);
  node->modality = std::move(modality);
  node->children = std::move(children);
  std::size_t h = mix(static_cast<std::size_t>(op), sort.index);
  if (!node->name.empty()) h = mix(h, std::hash<std::string>{}(node->name));
  if (node->modality) h = mix(h, std::hash<std::string>{}(node->modality->name));
  for (const auto& c : node->children) {
    h = mix(h, c.hash());
    node->size += c.size();
  }
  node->hash = h;
  return Formula(std::move(node));
}

Formula Formula::var(std::string name, Sort sort) {
  if (name.empty()) throw Error("variable with empty name");
  return make(Connective::var, sort, std::move(name), nullptr, {});
}

Formula Formula::bot(Sort sort) { return make(Connective::bot, sort, {}, nullptr, {}); }
Formula Formula::top(Sort sort) { return make(Connective::top, sort, {}, nullptr, {}); }

Formula Formula::neg(Formula f) {
  const Sort s = f.sort();
  return make(Connective::neg, s, {}, nullptr, {std::move(f)});
}

Formula Formula::binary(Connective op, Formula a, Formula b) {
  if (a.sort() != b.sort()) {
    throw SortError("connective joins a formula of sort " + sort_label(a.sort()) +
                    " with one of sort " + sort_label(b.sort()));
  }
  const Sort s = a.sort();
  return make(op, s, {}, nullptr, {std::move(a), std::move(b)});
}

Formula Formula::conj(Formula a, Formula b) { return binary(Connective::conj, std::move(a), std::move(b)); }
Formula Formula::disj(Formula a, Formula b) { return binary(Connective::disj, std::move(a), std::move(b)); }
Formula Formula::imp(Formula a, Formula b) { return binary(Connective::imp, std::move(a), std::move(b)); }
Formula Formula::iff(Formula a, Formula b) { return binary(Connective::iff, std::move(a), std::move(b)); }

Formula Formula::apply(Connective op, std::shared_ptr<const Modality> m, std::vector<Formula> args) {
  if (!m) throw SignatureError("null modality");
  if (args.size() != m->arity()) {
    throw SortError("modality '" + m->name + "' takes " + std::to_string(m->arity()) +
                    " arguments, got " + std::to_string(args.size()));
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].sort() != m->arguments[i]) {
      throw SortError("argument " + std::to_string(i + 1) + " of '" + m->name + "' must have sort " +
                      sort_label(m->arguments[i]) + ", got " + sort_label(args[i].sort()));
    }
  }
  const Sort s = m->result;
  return make(op, s, {}, std::move(m), std::move(args));
}

Formula Formula::modal(std::shared_ptr<const Modality> m, std::vector<Formula> args) {
  return apply(Connective::modal, std::move(m), std::move(args));
}

Formula Formula::dual(std::shared_ptr<const Modality> m, std::vector<Formula> args) {
  if (m && m->kind == ModalityKind::window) {
    throw SignatureError("window modality '" + m->name + "' has no separate dual");
  }
  return apply(Connective::dual, std::move(m), std::move(args));
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  if (a.hash != b.hash || a.op != b.op || a.sort != b.sort || a.size != b.size ||
      a.name != b.name || a.children.size() != b.children.size()) {
    return false;
  }
  if ((a.modality == nullptr) != (b.modality == nullptr)) return false;
  if (a.modality && a.modality->name != b.modality->name) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!(a.children[i] == b.children[i])) return false;
  }
  return true;
}

Sort recompute_sort(const Formula& f) {
  switch (f.op()) {
    case Connective::var:
    case Connective::bot:
    case Connective::top:
      return f.sort();
    case Connective::neg:
      return recompute_sort(f.child(0));
    case Connective::modal:
    case Connective::dual:
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (recompute_sort(f.child(i)) != f.modality()->arguments[i]) {
          throw InvariantViolation("cached sorts disagree with the tree");
        }
      }
      return f.modality()->result;
    default: {
      const Sort a = recompute_sort(f.child(0));
      if (recompute_sort(f.child(1)) != a) throw InvariantViolation("cached sorts disagree with the tree");
      return a;
    }
  }
}

namespace {

void collect_vars(const Formula& f, std::set<VarKey>& out) {
  if (f.op() == Connective::var) {
    out.insert({f.name(), f.sort()});
    return;
  }
  for (const auto& c : f.children()) collect_vars(c, out);
}

}  // namespace

std::vector<VarKey> variables(const Formula& f) {
  std::set<VarKey> s;
  collect_vars(f, s);
  return {s.begin(), s.end()};
}

std::vector<VarKey> variables(const std::vector<Formula>& fs) {
  std::set<VarKey> s;
  for (const auto& f : fs) collect_vars(f, s);
  return {s.begin(), s.end()};
}

std::size_t modal_depth(const Formula& f) {
  std::size_t d = 0;
  for (const auto& c : f.children()) d = std::max(d, modal_depth(c));
  return f.is_modal() ? d + 1 : d;
}

namespace {

Formula rebuild(const Formula& f, std::vector<Formula> kids) {
  switch (f.op()) {
    case Connective::var:
    case Connective::bot:
    case Connective::top:
      return f;
    case Connective::neg: return Formula::neg(std::move(kids[0]));
    case Connective::conj: return Formula::conj(std::move(kids[0]), std::move(kids[1]));
    case Connective::disj: return Formula::disj(std::move(kids[0]), std::move(kids[1]));
    case Connective::imp: return Formula::imp(std::move(kids[0]), std::move(kids[1]));
    case Connective::iff: return Formula::iff(std::move(kids[0]), std::move(kids[1]));
    case Connective::modal: return Formula::modal(f.modality(), std::move(kids));
    case Connective::dual: return Formula::dual(f.modality(), std::move(kids));
  }
  return f;
}

}  // namespace

Formula substitute(const Formula& f, const Substitution& subst) {
  if (f.op() == Connective::var) {
    auto it = subst.find({f.name(), f.sort()});
    if (it == subst.end()) return f;
    if (it->second.sort() != f.sort()) {
      throw SortError("substitution for '" + f.name() + "' changes its sort");
    }
    return it->second;
  }
  if (f.children().empty()) return f;
  std::vector<Formula> kids;
  kids.reserve(f.children().size());
  for (const auto& c : f.children()) kids.push_back(substitute(c, subst));
  return rebuild(f, std::move(kids));
}

Formula normalize(const Formula& f) {
  switch (f.op()) {
    case Connective::var:
    case Connective::bot:
      return f;
    case Connective::top:
      return Formula::neg(Formula::bot(f.sort()));
    default:
      break;
  }
  std::vector<Formula> kids;
  kids.reserve(f.children().size());
  for (const auto& c : f.children()) kids.push_back(normalize(c));
  switch (f.op()) {
    case Connective::disj:
      return Formula::neg(Formula::conj(Formula::neg(kids[0]), Formula::neg(kids[1])));
    case Connective::imp:
      return Formula::neg(Formula::conj(kids[0], Formula::neg(kids[1])));
    case Connective::iff:
      return Formula::conj(Formula::neg(Formula::conj(kids[0], Formula::neg(kids[1]))),
                           Formula::neg(Formula::conj(kids[1], Formula::neg(kids[0]))));
    default:
      return rebuild(f, std::move(kids));
  }
}

bool uses_only(const Formula& f, const Signature& sig) {
  if (f.is_modal() && !sig.contains(*f.modality())) return false;
  return std::all_of(f.children().begin(), f.children().end(),
                     [&](const Formula& c) { return uses_only(c, sig); });
}

namespace ts {

Formula dia(Formula f) { return Formula::modal(Signature::two_sorted().at(names::kDia), {std::move(f)}); }
Formula box(Formula f) { return Formula::dual(Signature::two_sorted().at(names::kDia), {std::move(f)}); }
Formula dia_inv(Formula f) { return Formula::modal(Signature::two_sorted().at(names::kDiaInv), {std::move(f)}); }
Formula box_inv(Formula f) { return Formula::dual(Signature::two_sorted().at(names::kDiaInv), {std::move(f)}); }
Formula win(Formula f) { return Formula::modal(Signature::two_sorted().at(names::kWin), {std::move(f)}); }
Formula win_inv(Formula f) { return Formula::modal(Signature::two_sorted().at(names::kWinInv), {std::move(f)}); }
Formula p1(std::string name) { return Formula::var(std::move(name), kObjects); }
Formula p2(std::string name) { return Formula::var(std::move(name), kAttributes); }

}  // namespace ts

}  // namespace conlog
