#include "conlog/suites.hpp"

#include <algorithm>

#include "conlog/error.hpp"
#include "conlog/lattice.hpp"
#include "conlog/logical_concepts.hpp"
#include "conlog/random.hpp"
#include "conlog/syntax.hpp"
#include "conlog/translate.hpp"

namespace conlog {

bool SuiteReport::passed() const {
  return std::all_of(lines.begin(), lines.end(), [](const SuiteLine& l) { return l.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"yao", "translation", "lattice", "iso"};
  return names;
}

namespace {

constexpr std::size_t kFormulasPerCheck = 100;

SuiteReport yao_suite(const FormalContext& k) {
  SuiteReport r{"yao", {}};
  for (const auto& c : verify_yao_isomorphisms(k).clauses) {
    std::string detail;
    if (c.passed) {
      detail = c.method + " bijection";
      for (std::size_t i = 0; i < c.bijection.size(); ++i) {
        detail += " " + std::to_string(i) + "->" + std::to_string(c.bijection[i]);
      }
    } else {
      detail = c.failure;
    }
    r.lines.push_back({c.name, c.passed, detail});
  }
  return r;
}

/// Counts and remembers the first failure of one family of checks.
struct Tally {
  std::string label;
  std::size_t checks = 0;
  std::string failure;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failure.empty()) failure = what;
  }
  SuiteLine line() const {
    return {label, failure.empty(), failure.empty() ? std::to_string(checks) + " checks" : failure};
  }
};

SuiteReport translation_suite(const FormalContext& k, std::uint64_t seed) {
  const SortedFrame frame = context_to_frame(k);
  const FormalContext kc = complement_context(k);
  const SortedFrame frame_c = context_to_frame(kc);
  Rng rng(seed);
  FormulaShape rs;
  FormulaShape win;
  win.dialect = Dialect::window;
  Tally modal{"approximation identities", 0, {}};
  Tally window{"window identities", 0, {}};
  Tally rho{"rho semantics", 0, {}};
  for (std::size_t i = 0; i < kFormulasPerCheck; ++i) {
    const Sort s = rng.chance(1, 2) ? kObjects : kAttributes;
    const Formula phi = random_formula(rng, s, rs);
    const Model m(frame, random_valuation(rng, frame, rs.variables));
    const SortedSubset t = truth_set(m, phi);
    const bool objects = s == kObjects;
    const Formula dia = objects ? ts::dia(phi) : ts::dia_inv(phi);
    const Formula box = objects ? ts::box(phi) : ts::box_inv(phi);
    const OperatorKind dk = objects ? OperatorKind::poss : OperatorKind::poss_inv;
    const OperatorKind bk = objects ? OperatorKind::nec : OperatorKind::nec_inv;
    modal.check(truth_set(m, dia) == apply_operator(dk, t, k) && truth_set(m, box) == apply_operator(bk, t, k),
                "fails for " + to_string(phi) + " under " + format_valuation(m.valuation(), frame));

    const Formula w = random_formula(rng, s, win);
    const Model mw(frame, random_valuation(rng, frame, win.variables));
    const Formula boxm = objects ? ts::win(w) : ts::win_inv(w);
    const OperatorKind wk = objects ? OperatorKind::plus : OperatorKind::minus;
    window.check(truth_set(mw, boxm) == apply_operator(wk, truth_set(mw, w), k),
                 "fails for " + to_string(w) + " under " + format_valuation(mw.valuation(), frame));

    const Model mc(frame_c, mw.valuation());
    rho.check(truth_set(mw, w) == truth_set(mc, translate_rho(w)),
              "fails for " + to_string(w) + " under " + format_valuation(mw.valuation(), frame));
  }
  return {"translation", {modal.line(), window.line(), rho.line()}};
}

std::vector<LogicalPair> generated_family(ConceptKind kind) {
  const Formula p = ts::p1("p");
  const Formula q = ts::p1("q");
  std::vector<LogicalPair> out;
  for (const Formula& seed : {p, q, Formula::conj(p, q), Formula::top(kObjects), Formula::bot(kObjects)}) {
    out.push_back(generate_pair(seed, kind));
  }
  return out;
}

SuiteLine law_line(const std::string& label, const LawReport& r) {
  std::size_t n = 0;
  for (const auto& l : r.laws) {
    n += l.instances;
    if (!l.passed) return {label, false, l.law + ": " + l.witness};
  }
  return {label, true, std::to_string(n) + " checks"};
}

SuiteReport lattice_suite(const FormalContext& k, std::uint64_t budget) {
  SuiteReport r{"lattice", {}};
  const SortedFrame frame = context_to_frame(k);
  for (ConceptKind kind : {ConceptKind::FC, ConceptKind::PC, ConceptKind::OC}) {
    const std::string name(kind_name(kind));
    auto concepts = enumerate_concepts(k, kind);
    if (k.object_count() <= 20) {
      const bool same = concepts == brute_force_concepts(k, kind);
      r.lines.push_back({name + " enumeration", same,
                         same ? std::to_string(concepts.size()) + " concepts" : "differs from the fixpoint scan"});
    }
    std::string laws;
    try {
      laws = check_lattice_laws(build_lattice(concepts, kind, k));
    } catch (const LatticeError& e) {
      laws = e.what();
    }
    r.lines.push_back({name + " lattice laws", laws.empty(), laws.empty() ? "all laws hold" : laws});
  }
  for (ConceptKind kind : {ConceptKind::FC, ConceptKind::PC, ConceptKind::OC}) {
    r.lines.push_back(law_line(std::string(kind_name(kind)) + " quotient",
                               verify_quotient_lattice(generated_family(kind), kind, frame, budget)));
  }
  return r;
}

SuiteReport iso_suite(const FormalContext& k, std::uint64_t budget) {
  const LawReport all = verify_isomorphisms(generated_family(ConceptKind::FC), k, budget);
  SuiteReport r{"iso", {}};
  for (const char* clause : {"a", "b", "c"}) {
    LawReport part;
    for (const auto& l : all.laws) {
      if (l.law.rfind(std::string(clause) + ":", 0) == 0) part.laws.push_back(l);
    }
    r.lines.push_back(law_line(clause, part));
  }
  return r;
}

}  // namespace

SuiteReport run_suite(std::string_view name, const FormalContext& context, std::uint64_t seed, std::uint64_t budget) {
  if (name == "yao") return yao_suite(context);
  if (name == "translation") return translation_suite(context, seed);
  if (name == "lattice") return lattice_suite(context, budget);
  if (name == "iso") return iso_suite(context, budget);
  throw Error("unknown suite '" + std::string(name) + "' (expected yao, translation, lattice, iso or all)");
}

}  // namespace conlog
