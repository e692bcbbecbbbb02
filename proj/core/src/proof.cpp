#include "conlog/proof.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>

#include "conlog/error.hpp"
#include "conlog/semantics.hpp"
#include "conlog/translate.hpp"

namespace conlog {

namespace {

std::vector<AxiomScheme> normal_schemes(const Signature& sig) {
  std::vector<AxiomScheme> out;
  for (const auto& m : sig.modalities()) {
    if (m->kind != ModalityKind::existential) continue;
    const std::size_t n = m->arity();
    std::vector<Formula> phis;
    for (std::size_t i = 0; i < n; ++i) {
      phis.push_back(Formula::var("phi" + std::to_string(i + 1), m->arguments[i]));
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Formula psi = Formula::var("psi", m->arguments[i]);
      auto with = [&](const Formula& f) {
        auto args = phis;
        args[i] = f;
        return Formula::dual(m, std::move(args));
      };
      Formula pattern = Formula::imp(with(Formula::imp(phis[i], psi)),
                                     Formula::imp(Formula::dual(m, phis), with(psi)));
      std::string name = "K_" + m->name;
      if (n > 1) name += "_" + std::to_string(i + 1);
      out.push_back({"K", name, std::move(pattern)});
    }
  }
  for (const auto& m : sig.modalities()) {
    if (m->kind != ModalityKind::existential) continue;
    std::vector<Formula> phis;
    std::vector<Formula> negs;
    for (std::size_t i = 0; i < m->arity(); ++i) {
      phis.push_back(Formula::var("phi" + std::to_string(i + 1), m->arguments[i]));
      negs.push_back(Formula::neg(phis.back()));
    }
    out.push_back({"Dual", "Dual_" + m->name,
                   Formula::iff(Formula::modal(m, phis), Formula::neg(Formula::dual(m, negs)))});
  }
  return out;
}

}  // namespace

ProofSystem ProofSystem::k(const Signature& sig) {
  return ProofSystem(SystemId::K, sig, normal_schemes(sig));
}

ProofSystem ProofSystem::kb2() {
  const Signature& sig = Signature::rough_set();
  auto schemes = normal_schemes(sig);
  const Formula p = Formula::var("phi", kObjects);
  const Formula q = Formula::var("psi", kAttributes);
  schemes.push_back({"B", "B_dia", Formula::imp(p, ts::box_inv(ts::dia(p)))});
  schemes.push_back({"B", "B_dia-", Formula::imp(q, ts::box(ts::dia_inv(q)))});
  return ProofSystem(SystemId::KB2, sig, std::move(schemes));
}

ProofSystem ProofSystem::kf() {
  const Formula a = Formula::var("phi1", kObjects);
  const Formula b = Formula::var("phi2", kObjects);
  const Formula p = Formula::var("phi", kObjects);
  const Formula c = Formula::var("psi1", kAttributes);
  const Formula d = Formula::var("psi2", kAttributes);
  const Formula q = Formula::var("psi", kAttributes);
  std::vector<AxiomScheme> schemes;
  schemes.push_back({"K1", "K1",
                     Formula::imp(ts::win(Formula::conj(a, Formula::neg(b))),
                                  Formula::imp(ts::win(Formula::neg(a)), ts::win(Formula::neg(b))))});
  schemes.push_back({"B1", "B1", Formula::imp(p, ts::win_inv(ts::win(p)))});
  schemes.push_back({"K2", "K2",
                     Formula::imp(ts::win_inv(Formula::conj(c, Formula::neg(d))),
                                  Formula::imp(ts::win_inv(Formula::neg(c)),
                                               ts::win_inv(Formula::neg(d))))});
  schemes.push_back({"B2", "B2", Formula::imp(q, ts::win(ts::win_inv(q)))});
  return ProofSystem(SystemId::KF, Signature::window(), std::move(schemes));
}

ProofSystem ProofSystem::by_name(std::string_view name) {
  if (name == "K") return k(Signature::rough_set());
  if (name == "KB2") return kb2();
  if (name == "KF") return kf();
  throw Error("unknown proof system '" + std::string(name) + "' (expected K, KB2 or KF)");
}

std::string_view ProofSystem::name() const {
  switch (id_) {
    case SystemId::K: return "K";
    case SystemId::KB2: return "KB2";
    case SystemId::KF: return "KF";
  }
  return "?";
}

namespace {

using Word = std::uint64_t;

constexpr Word kLowPatterns[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

constexpr std::size_t kMaxAtoms = 24;

/// Normalized skeleton: Boolean nodes over atom indices.
struct Skeleton {
  struct Node {
    Connective op;
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t atom = 0;
  };
  std::vector<Node> nodes;
  std::vector<Formula> atoms;
  std::unordered_map<Formula, std::size_t> atom_index;

  std::size_t build(const Formula& f) {
    Node n{f.op()};
    switch (f.op()) {
      case Connective::bot:
        break;
      case Connective::neg:
        n.a = build(f.child(0));
        break;
      case Connective::conj:
        n.a = build(f.child(0));
        n.b = build(f.child(1));
        break;
      default: {  // variable or modal atom; normalized input has no other connective
        auto [it, fresh] = atom_index.emplace(f, atoms.size());
        if (fresh) atoms.push_back(f);
        n.op = Connective::var;
        n.atom = it->second;
        break;
      }
    }
    nodes.push_back(n);
    return nodes.size() - 1;
  }
};

}  // namespace

bool is_tautology(const Formula& f) {
  Skeleton sk;
  const std::size_t root = sk.build(normalize(f));
  const std::size_t k = sk.atoms.size();
  if (k > kMaxAtoms) throw BudgetExceeded(k, std::uint64_t{1} << kMaxAtoms);
  const std::size_t words = k > 6 ? std::size_t{1} << (k - 6) : 1;
  const Word mask = k >= 6 ? ~Word{0} : ((Word{1} << (std::size_t{1} << k)) - 1);
  std::vector<Word> val(sk.nodes.size());
  for (std::size_t w = 0; w < words; ++w) {
    for (std::size_t i = 0; i < sk.nodes.size(); ++i) {
      const auto& n = sk.nodes[i];
      switch (n.op) {
        case Connective::bot: val[i] = 0; break;
        case Connective::neg: val[i] = ~val[n.a]; break;
        case Connective::conj: val[i] = val[n.a] & val[n.b]; break;
        default:
          val[i] = n.atom < 6 ? kLowPatterns[n.atom] : (((w >> (n.atom - 6)) & 1U) ? ~Word{0} : 0);
          break;
      }
    }
    if ((~val[root] & mask) != 0) return false;
  }
  return true;
}

namespace {

bool match(const Formula& pattern, const Formula& target, Substitution& subst) {
  if (pattern.op() == Connective::var) {
    if (pattern.sort() != target.sort()) return false;
    auto [it, fresh] = subst.emplace(VarKey{pattern.name(), pattern.sort()}, target);
    return fresh || it->second == target;
  }
  if (pattern.op() != target.op() || pattern.sort() != target.sort() ||
      pattern.children().size() != target.children().size()) {
    return false;
  }
  if (pattern.is_modal() && pattern.modality()->name != target.modality()->name) return false;
  for (std::size_t i = 0; i < pattern.children().size(); ++i) {
    if (!match(pattern.child(i), target.child(i), subst)) return false;
  }
  return true;
}

bool safe_tautology(const Formula& f) {
  try {
    return is_tautology(f);
  } catch (const BudgetExceeded&) {
    return false;
  }
}

std::optional<AxiomMatch> match_filtered(const Formula& f, const ProofSystem& system,
                                         std::string_view scheme) {
  if (!uses_only(f, system.signature())) return std::nullopt;
  const bool any = scheme.empty();
  if ((any || scheme == "PL") && safe_tautology(f)) return AxiomMatch{"PL", "PL", {}};
  const Formula target = normalize(f);
  for (const auto& s : system.schemes()) {
    if (!any && scheme != s.family && scheme != s.name) continue;
    Substitution subst;
    if (match(normalize(s.pattern), target, subst)) return AxiomMatch{s.family, s.name, std::move(subst)};
  }
  return std::nullopt;
}

}  // namespace

std::optional<AxiomMatch> match_axiom(const Formula& f, const ProofSystem& system) {
  return match_filtered(f, system, "");
}

std::optional<AxiomMatch> match_axiom(const Formula& f, const ProofSystem& system,
                                      std::string_view scheme) {
  return match_filtered(f, system, scheme);
}

namespace {

struct LineState {
  std::set<std::size_t> deps;
  bool global = false;
};

Formula conjunction(const std::vector<Formula>& fs) {
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::conj(out, fs[i]);
  return out;
}

class Rejection {
 public:
  explicit Rejection(std::string reason) : reason(std::move(reason)) {}
  std::string reason;
};

LineState check_line(const ProofLine& line, const std::vector<ProofLine>& script,
                     const std::vector<LineState>& states, const std::vector<Formula>& premises,
                     const ProofSystem& system) {
  const Formula& f = line.formula;
  const Justification& j = line.justification;
  if (!uses_only(f, system.signature())) {
    throw Rejection("formula uses a modality outside the " + std::string(system.name()) + " signature");
  }
  auto cite = [&](std::size_t k) -> const ProofLine& {
    if (k == 0 || k >= line.index) {
      throw Rejection("cites line " + std::to_string(k) + ", which is not an earlier line");
    }
    return script[k - 1];
  };
  switch (j.kind) {
    case RuleKind::axiom: {
      if (j.scheme == "PL" || (j.scheme.empty() && j.substitution.empty())) {
        if (!match_axiom(f, system, j.scheme)) {
          throw Rejection(j.scheme.empty() ? "not an axiom of " + std::string(system.name())
                                           : "not a propositional tautology");
        }
        return {};
      }
      if (!j.substitution.empty()) {
        const Formula target = normalize(f);
        for (const auto& s : system.schemes()) {
          if (!j.scheme.empty() && j.scheme != s.family && j.scheme != s.name) continue;
          try {
            if (normalize(substitute(s.pattern, j.substitution)) == target) return {};
          } catch (const SortError&) {
          }
        }
        throw Rejection("not the given substitution instance of " +
                        (j.scheme.empty() ? std::string("any scheme") : "'" + j.scheme + "'"));
      }
      bool known = false;
      for (const auto& s : system.schemes()) known = known || j.scheme == s.family || j.scheme == s.name;
      if (!known) throw Rejection("no scheme '" + j.scheme + "' in " + std::string(system.name()));
      if (!match_axiom(f, system, j.scheme)) throw Rejection("not an instance of '" + j.scheme + "'");
      return {};
    }
    case RuleKind::premise: {
      if (j.refs.size() != 1) throw Rejection("premise needs exactly one premise id");
      const std::size_t id = j.refs[0];
      if (id == 0 || id > premises.size()) {
        throw Rejection("premise " + std::to_string(id) + " is not declared");
      }
      if (!(normalize(premises[id - 1]) == normalize(f))) {
        throw Rejection("formula differs from premise " + std::to_string(id));
      }
      return {{id}, false};
    }
    case RuleKind::mp: {
      if (j.refs.size() != 2) throw Rejection("MP needs two cited lines");
      const ProofLine& ante = cite(j.refs[0]);
      const ProofLine& impl = cite(j.refs[1]);
      if (ante.formula.sort() != f.sort()) throw Rejection("MP joins lines of different sorts");
      if (!(normalize(impl.formula) == normalize(Formula::imp(ante.formula, f)))) {
        throw Rejection("line " + std::to_string(j.refs[1]) + " is not line " +
                        std::to_string(j.refs[0]) + " -> this line");
      }
      LineState s = states[j.refs[0] - 1];
      const LineState& t = states[j.refs[1] - 1];
      s.deps.insert(t.deps.begin(), t.deps.end());
      s.global = s.global || t.global;
      return s;
    }
    case RuleKind::ug: {
      if (j.refs.size() != 1) throw Rejection("UG needs one cited line");
      const ProofLine& from = cite(j.refs[0]);
      if (!f.is_modal()) throw Rejection("UG must conclude a modal formula");
      const Modality& m = *f.modality();
      if (!j.modality.empty() && j.modality != m.name &&
          j.modality != m.dual_keyword) {
        throw Rejection("UG names '" + j.modality + "' but the line is built with '" + m.name + "'");
      }
      const Formula cited = normalize(from.formula);
      if (m.kind == ModalityKind::window) {
        if (f.op() != Connective::modal || !(cited == normalize(Formula::neg(f.child(0))))) {
          throw Rejection("window UG needs the cited line to be the negation of the argument");
        }
      } else {
        if (f.op() != Connective::dual) throw Rejection("UG must conclude a box formula");
        bool ok = false;
        for (std::size_t i = 0; i < f.children().size(); ++i) {
          if (j.position != 0 && j.position != i + 1) continue;
          ok = ok || normalize(f.child(i)) == cited;
        }
        if (!ok) throw Rejection("no argument of the box equals line " + std::to_string(j.refs[0]));
      }
      LineState s = states[j.refs[0] - 1];
      if (!s.deps.empty()) s.global = true;
      return s;
    }
  }
  throw Rejection("unknown rule");
}

}  // namespace

Verdict check_proof(const std::vector<ProofLine>& script, const std::vector<Formula>& premises,
                    const ProofSystem& system, const std::optional<Formula>& goal) {
  Verdict v;
  if (script.empty()) {
    v.reason = "empty derivation";
    return v;
  }
  std::vector<LineState> states;
  for (std::size_t k = 0; k < script.size(); ++k) {
    const ProofLine& line = script[k];
    if (line.index != k + 1) {
      v.line = k + 1;
      v.reason = "line numbered " + std::to_string(line.index) + " where " + std::to_string(k + 1) +
                 " was expected";
      return v;
    }
    try {
      states.push_back(check_line(line, script, states, premises, system));
    } catch (const Rejection& r) {
      v.line = line.index;
      v.reason = r.reason;
      return v;
    }
  }
  const Formula& last = script.back().formula;
  v.depends_on = states.back().deps;
  v.global = states.back().global;
  if (goal) {
    const Formula target = normalize(*goal);
    if (normalize(last) == target) {
      // conclusion stated directly
    } else if (!premises.empty() && v.depends_on.empty() &&
               std::all_of(premises.begin(), premises.end(),
                           [&](const Formula& p) { return p.sort() == goal->sort(); }) &&
               normalize(last) == normalize(Formula::imp(conjunction(premises), *goal))) {
      v.implication_form = true;
    } else {
      v.line = script.size();
      v.reason = "last line is not the goal";
      return v;
    }
  }
  v.accepted = true;
  return v;
}

bool soundness_probe(const ProofSystem& system, const std::vector<ProofLine>& script,
                     const std::vector<Formula>& premises, const std::vector<SortedFrame>& frames,
                     std::uint64_t budget) {
  const Verdict v = check_proof(script, premises, system);
  if (!v.accepted) return false;
  const Formula& conclusion = script.back().formula;
  std::vector<Formula> used;
  for (std::size_t id : v.depends_on) used.push_back(premises[id - 1]);
  for (const auto& frame : frames) {
    CheckResult r;
    if (used.empty()) {
      r = check_frame_validity(frame, conclusion, budget);
    } else if (v.global) {
      r = check_global_consequence(frame, used, conclusion, budget);
    } else {
      r = check_local_consequence(frame, used, conclusion, budget);
    }
    if (!r.holds) return false;
  }
  return true;
}

namespace {

class Emitter {
 public:
  std::size_t axiom(Formula f, std::string scheme) {
    Justification j;
    j.kind = RuleKind::axiom;
    j.scheme = std::move(scheme);
    return push(std::move(f), std::move(j));
  }
  std::size_t mp(Formula f, std::size_t ante, std::size_t impl) {
    Justification j;
    j.kind = RuleKind::mp;
    j.refs = {ante, impl};
    return push(std::move(f), std::move(j));
  }
  std::size_t ug(Formula f, std::size_t from, std::string modality) {
    Justification j;
    j.kind = RuleKind::ug;
    j.refs = {from};
    j.modality = std::move(modality);
    j.position = 1;
    return push(std::move(f), std::move(j));
  }
  std::size_t premise(Formula f, std::size_t id) {
    Justification j;
    j.kind = RuleKind::premise;
    j.refs = {id};
    return push(std::move(f), std::move(j));
  }

  std::vector<ProofLine> take() { return std::move(lines_); }

 private:
  std::size_t push(Formula f, Justification j) {
    lines_.push_back(ProofLine{lines_.size() + 1, std::move(f), std::move(j)});
    return lines_.size();
  }

  std::vector<ProofLine> lines_;
};

Formula syllogism(const Formula& a, const Formula& b, const Formula& c) {
  return Formula::imp(Formula::imp(a, b), Formula::imp(Formula::imp(b, c), Formula::imp(a, c)));
}

/// rho of a K1 (objects) or K2 (attributes) instance, derived in KB2.
std::size_t expand_k(Emitter& out, const Formula& a, const Formula& b, bool objects,
                     const Formula& target) {
  const auto& sig = Signature::rough_set();
  auto m = sig.at(objects ? names::kDia : names::kDiaInv);
  auto box = [&](Formula f) { return Formula::dual(m, {std::move(f)}); };
  const Formula x = Formula::neg(Formula::conj(a, Formula::neg(b)));
  const Formula nna = Formula::neg(Formula::neg(a));
  const Formula nnb = Formula::neg(Formula::neg(b));
  const Formula y = Formula::imp(nna, nnb);
  const Formula A = box(x);
  const Formula B = box(y);
  const Formula C = Formula::imp(box(nna), box(nnb));
  const std::string k = "K_" + m->name;
  const std::size_t l1 = out.axiom(Formula::imp(x, y), "PL");
  const std::size_t l2 = out.ug(box(Formula::imp(x, y)), l1, m->name);
  const std::size_t l3 = out.axiom(Formula::imp(box(Formula::imp(x, y)), Formula::imp(A, B)), k);
  const std::size_t l4 = out.mp(Formula::imp(A, B), l2, l3);
  const std::size_t l5 = out.axiom(Formula::imp(B, C), k);
  const std::size_t l6 = out.axiom(syllogism(A, B, C), "PL");
  const std::size_t l7 = out.mp(Formula::imp(Formula::imp(B, C), Formula::imp(A, C)), l4, l6);
  return out.mp(target, l5, l7);
}

/// rho of a B1 (objects) or B2 (attributes) instance, derived in KB2.
std::size_t expand_b(Emitter& out, const Formula& a, bool objects, const Formula& target) {
  const auto& sig = Signature::rough_set();
  auto fwd = sig.at(objects ? names::kDia : names::kDiaInv);
  auto back = sig.at(objects ? names::kDiaInv : names::kDia);
  auto dia = [&](Formula f) { return Formula::modal(fwd, {std::move(f)}); };
  auto box = [&](Formula f) { return Formula::dual(fwd, {std::move(f)}); };
  auto box_back = [&](Formula f) { return Formula::dual(back, {std::move(f)}); };
  const Formula da = dia(a);
  const Formula nbna = Formula::neg(box(Formula::neg(a)));
  const Formula dual = Formula::iff(da, nbna);
  const Formula step = Formula::imp(da, nbna);
  const Formula lhs = box_back(da);
  const Formula rhs = box_back(nbna);
  const std::size_t l1 = out.axiom(Formula::imp(a, lhs), objects ? "B_dia" : "B_dia-");
  const std::size_t l2 = out.axiom(dual, "Dual_" + fwd->name);
  const std::size_t l3 = out.axiom(Formula::imp(dual, step), "PL");
  const std::size_t l4 = out.mp(step, l2, l3);
  const std::size_t l5 = out.ug(box_back(step), l4, back->name);
  const std::size_t l6 = out.axiom(Formula::imp(box_back(step), Formula::imp(lhs, rhs)), "K_" + back->name);
  const std::size_t l7 = out.mp(Formula::imp(lhs, rhs), l5, l6);
  const std::size_t l8 = out.axiom(syllogism(a, lhs, rhs), "PL");
  const std::size_t l9 = out.mp(Formula::imp(Formula::imp(lhs, rhs), Formula::imp(a, rhs)), l1, l8);
  return out.mp(target, l7, l9);
}

}  // namespace

std::vector<ProofLine> translate_proof(const std::vector<ProofLine>& kf_script) {
  const ProofSystem kf = ProofSystem::kf();
  Emitter out;
  std::map<std::size_t, std::size_t> renumber;
  for (const auto& line : kf_script) {
    if (!uses_only(line.formula, kf.signature())) {
      throw SignatureError("line " + std::to_string(line.index) + " is not a window formula");
    }
    const Formula image = translate_rho(line.formula);
    const Justification& j = line.justification;
    auto mapped = [&](std::size_t k) {
      auto it = renumber.find(k);
      if (it == renumber.end()) {
        throw Error("line " + std::to_string(line.index) + " cites line " + std::to_string(k) +
                    ", which does not precede it");
      }
      return it->second;
    };
    std::size_t at = 0;
    switch (j.kind) {
      case RuleKind::premise:
        at = out.premise(image, j.refs.empty() ? 0 : j.refs[0]);
        break;
      case RuleKind::mp:
        if (j.refs.size() != 2) throw Error("line " + std::to_string(line.index) + ": MP needs two lines");
        at = out.mp(image, mapped(j.refs[0]), mapped(j.refs[1]));
        break;
      case RuleKind::ug: {
        if (j.refs.size() != 1 || !line.formula.is_modal()) {
          throw Error("line " + std::to_string(line.index) + ": malformed UG");
        }
        const bool objects = line.formula.modality()->name == names::kWin;
        at = out.ug(image, mapped(j.refs[0]), std::string(objects ? names::kDia : names::kDiaInv));
        break;
      }
      case RuleKind::axiom: {
        auto m = match_axiom(line.formula, kf, j.scheme);
        if (!m) throw Error("line " + std::to_string(line.index) + " is not a KF axiom");
        if (m->family == "PL") {
          at = out.axiom(image, "PL");
        } else if (m->family == "K1" || m->family == "K2") {
          const bool objects = m->family == "K1";
          const Sort s = objects ? kObjects : kAttributes;
          const std::string a = objects ? "phi1" : "psi1";
          const std::string b = objects ? "phi2" : "psi2";
          at = expand_k(out, translate_rho(m->substitution.at({a, s})),
                        translate_rho(m->substitution.at({b, s})), objects, image);
        } else {
          const bool objects = m->family == "B1";
          const Sort s = objects ? kObjects : kAttributes;
          at = expand_b(out, translate_rho(m->substitution.at({objects ? "phi" : "psi", s})), objects,
                        image);
        }
        break;
      }
    }
    renumber[line.index] = at;
  }
  return out.take();
}

}  // namespace conlog
