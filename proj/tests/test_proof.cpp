#include <gtest/gtest.h>

#include <filesystem>

#include "conlog/error.hpp"
#include "conlog/io.hpp"
#include "conlog/proof.hpp"
#include "conlog/proof_script.hpp"
#include "conlog/random.hpp"
#include "conlog/semantics.hpp"
#include "conlog/syntax.hpp"
#include "conlog/translate.hpp"
#include "oracles.hpp"

using namespace conlog;

namespace {

const std::string kProofs = std::string(CONLOG_DATA_DIR) + "/proofs/";

ProofScript load(const std::string& name) { return parse_proof_script(read_file(kProofs + name)); }

Formula f1(const char* text) { return parse_formula(text, kObjects); }
Formula f2(const char* text) { return parse_formula(text, kAttributes); }

std::vector<SortedFrame> random_frames(std::uint64_t seed, int n) {
  Rng rng(seed);
  std::vector<SortedFrame> out;
  for (int i = 0; i < n; ++i) out.push_back(context_to_frame(random_context(rng, 1, 4, 1, 4)));
  return out;
}

}  // namespace

TEST(Tautology, PropositionalSkeleton) {
  EXPECT_TRUE(is_tautology(f1("(p -> q) -> (~q -> ~p)")));
  EXPECT_TRUE(is_tautology(f2("dia p | ~dia p")));
  // Modal atoms are compared after normalization.
  EXPECT_TRUE(is_tautology(f2("box (p -> q) -> box ~(p & ~q)")));
  EXPECT_FALSE(is_tautology(f2("box p -> dia p")));
  EXPECT_FALSE(is_tautology(f1("p -> q")));
  std::string wide = "a0";
  for (int i = 1; i < 25; ++i) wide += " | a" + std::to_string(i);
  EXPECT_THROW(is_tautology(parse_formula(wide, kObjects)), BudgetExceeded);
}

// The skeleton check agrees with brute-force truth tables on random formulas.
TEST(Tautology, MatchesTruthTables) {
  Rng rng(41);
  FormulaShape shape;
  shape.depth = 3;
  shape.variables = {{"p", kObjects}, {"q", kObjects}};
  for (int i = 0; i < 300; ++i) {
    Formula f = random_formula(rng, kObjects, shape);
    if (rng.chance(1, 2)) f = Formula::disj(f, Formula::neg(random_formula(rng, kObjects, shape)));
    // Only pure propositional formulas: modal atoms would need a model.
    bool modal = false;
    std::function<void(const Formula&)> scan = [&](const Formula& g) {
      modal = modal || g.op() == Connective::modal || g.op() == Connective::dual;
      for (const auto& c : g.children()) scan(c);
    };
    scan(f);
    if (modal) continue;
    // A one-object frame realizes every row of the truth table.
    const auto k = FormalContext::from_rows({"g"}, {"m"}, {"X"});
    EXPECT_EQ(is_tautology(f), oracle::valid(context_to_frame(k), f)) << to_string(f);
  }
}

TEST(Axioms, Matching) {
  const ProofSystem kb2 = ProofSystem::kb2();
  auto m = match_axiom(f2("box (p -> q) -> (box p -> box q)"), kb2);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->family, "K");
  EXPECT_EQ(m->name, "K_dia");
  m = match_axiom(f1("p & q -> box- dia (p & q)"), kb2);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->name, "B_dia");
  m = match_axiom(f2("dia p <-> ~box ~p"), kb2);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->family, "Dual");
  EXPECT_EQ(match_axiom(f1("p -> p"), kb2)->family, "PL");
  EXPECT_FALSE(match_axiom(f2("box p -> dia p"), kb2));
  // B in the wrong direction is not an axiom.
  EXPECT_FALSE(match_axiom(f1("box- dia p -> p"), kb2));
  EXPECT_FALSE(match_axiom(f2("box (p -> q) -> (box p -> box q)"), kb2, "B"));
  EXPECT_TRUE(match_axiom(f2("box (p -> q) -> (box p -> box q)"), kb2, "K_dia"));

  const ProofSystem kf = ProofSystem::kf();
  EXPECT_EQ(match_axiom(f1("p -> boxm- boxm p"), kf)->family, "B1");
  EXPECT_EQ(match_axiom(f2("q -> boxm boxm- q"), kf)->family, "B2");
  EXPECT_FALSE(match_axiom(f1("p -> boxm- boxm p"), kb2));
  EXPECT_THROW(ProofSystem::by_name("S5"), Error);
}

// Every axiom instance of KB2 and KF is valid on context frames.
TEST(Axioms, SchemesAreValidOnContextFrames) {
  const auto frames = random_frames(77, 30);
  for (const ProofSystem& sys : {ProofSystem::kb2(), ProofSystem::kf()}) {
    for (const auto& s : sys.schemes()) {
      for (const auto& fr : frames) EXPECT_TRUE(frame_valid(fr, s.pattern)) << s.name;
    }
  }
}

TEST(Proof, AntitoneDerivationIsAccepted) {
  const ProofScript s = load("antitone_kb2.proof");
  ASSERT_EQ(s.lines.size(), 6u);
  const Verdict v = check_script(s);
  EXPECT_TRUE(v.accepted) << v.reason;
  EXPECT_TRUE(v.global);
  EXPECT_EQ(v.depends_on, (std::set<std::size_t>{1}));
  EXPECT_EQ(s.goal, f2("box ~q -> box ~p"));
  const auto frames = random_frames(5, 20);
  EXPECT_TRUE(soundness_probe(ProofSystem::kb2(), s.lines, s.premises, frames, 1u << 20));
}

TEST(Proof, CorpusIsAccepted) {
  for (const auto& e : std::filesystem::directory_iterator(std::string(CONLOG_DATA_DIR) + "/proofs")) {
    const ProofScript s = parse_proof_script(read_file(e.path().string()));
    const Verdict v = check_script(s);
    EXPECT_TRUE(v.accepted) << e.path() << ": line " << v.line << ": " << v.reason;
    const auto frames = random_frames(9, 15);
    EXPECT_TRUE(soundness_probe(ProofSystem::by_name(s.system), s.lines, s.premises, frames, 1u << 20)) << e.path();
  }
}

TEST(Proof, MutationsAreRejected) {
  const ProofScript base = load("antitone_kb2.proof");
  const ProofSystem sys = ProofSystem::kb2();
  // Negating any line breaks that line.
  for (std::size_t i = 0; i < base.lines.size(); ++i) {
    ProofScript s = base;
    s.lines[i].formula = Formula::neg(s.lines[i].formula);
    const Verdict v = check_script(s);
    EXPECT_FALSE(v.accepted);
    EXPECT_EQ(v.line, i + 1);
  }
  auto rejected = [&](ProofScript s) { return !check_script(s).accepted; };
  ProofScript s = base;
  s.lines[2].justification.refs = {2, 1};  // MP with swapped references
  EXPECT_TRUE(rejected(s));
  s = base;
  s.lines[2].justification.refs = {1, 3};  // cites itself
  EXPECT_TRUE(rejected(s));
  s = base;
  s.lines[5].justification.refs = {4, 9};
  EXPECT_TRUE(rejected(s));
  s = base;
  s.lines[3].justification.modality = "dia-";  // box- does not produce box
  EXPECT_TRUE(rejected(s));
  s = base;
  s.lines[0].justification.refs = {2};  // no such premise
  EXPECT_TRUE(rejected(s));
  s = base;
  s.premises.clear();
  EXPECT_TRUE(rejected(s));
  s = base;
  s.lines[4].justification.scheme = "B";
  EXPECT_TRUE(rejected(s));
  s = base;
  s.lines[4].justification.substitution = {{VarKey{"phi1", kObjects}, f1("q")}};
  EXPECT_TRUE(rejected(s));
  s = base;
  s.lines[1].index = 7;
  EXPECT_TRUE(rejected(s));
  s = base;
  s.goal = f2("box ~p -> box ~q");
  EXPECT_TRUE(rejected(s));
  s = base;
  s.lines.pop_back();
  EXPECT_TRUE(rejected(s));
  // Rejections are deterministic.
  s = base;
  s.lines[3].formula = f2("box (~p -> ~q)");
  const Verdict a = check_script(s);
  const Verdict b = check_script(s);
  EXPECT_FALSE(a.accepted);
  EXPECT_EQ(a.line, 4u);
  EXPECT_EQ(a.reason, b.reason);
  EXPECT_FALSE(check_proof(s.lines, s.premises, sys, s.goal).accepted);
}

TEST(Proof, PremiseFreeImplicationForm) {
  std::vector<ProofLine> lines;
  lines.push_back({1, f1("p -> box- dia p"), {RuleKind::axiom, "B", {}, {}, "", 0}});
  const Verdict v = check_proof(lines, {}, ProofSystem::kb2(), f1("p -> box- dia p"));
  EXPECT_TRUE(v.accepted) << v.reason;
  EXPECT_FALSE(v.global);
  EXPECT_TRUE(v.depends_on.empty());
  // A theorem used as the implication (premise) -> goal.
  std::vector<ProofLine> imp;
  imp.push_back({1, f1("p & (p -> q) -> q"), {RuleKind::axiom, "PL", {}, {}, "", 0}});
  const Verdict w = check_proof(imp, {f1("p"), f1("p -> q")}, ProofSystem::kb2(), f1("q"));
  EXPECT_TRUE(w.accepted) << w.reason;
  EXPECT_TRUE(w.implication_form);
}

TEST(Translation, KfProofsTranslateToKb2) {
  for (const char* name : {"antitone_kf.proof", "antitone_kf_attributes.proof", "b1_instance.proof",
                           "b2_mp.proof", "window_ug.proof"}) {
    const ProofScript kf = load(name);
    ASSERT_EQ(kf.system, "KF") << name;
    ASSERT_TRUE(check_script(kf).accepted) << name;
    const ProofScript kb = translate_script(kf);
    EXPECT_EQ(kb.system, "KB2");
    const Verdict v = check_script(kb);
    EXPECT_TRUE(v.accepted) << name << ": line " << v.line << ": " << v.reason;
    for (const auto& line : kb.lines) EXPECT_TRUE(uses_only(line.formula, Signature::rough_set())) << name;
    EXPECT_EQ(kb.goal.has_value(), kf.goal.has_value());
    if (kf.goal) EXPECT_EQ(*kb.goal, translate_rho(*kf.goal));
    EXPECT_EQ(kb.lines.back().formula, translate_rho(kf.lines.back().formula));
    const auto frames = random_frames(13, 15);
    EXPECT_TRUE(soundness_probe(ProofSystem::kb2(), kb.lines, kb.premises, frames, 1u << 20)) << name;
  }
  EXPECT_THROW(translate_proof(load("antitone_kb2.proof").lines), SignatureError);
}

TEST(Script, RoundTripAndErrors) {
  for (const auto& e : std::filesystem::directory_iterator(std::string(CONLOG_DATA_DIR) + "/proofs")) {
    const ProofScript s = parse_proof_script(read_file(e.path().string()));
    const ProofScript again = parse_proof_script(serialize_proof_script(s));
    EXPECT_EQ(again.system, s.system);
    EXPECT_EQ(again.premises, s.premises);
    EXPECT_EQ(again.goal, s.goal);
    ASSERT_EQ(again.lines.size(), s.lines.size());
    for (std::size_t i = 0; i < s.lines.size(); ++i) {
      EXPECT_EQ(again.lines[i].formula, s.lines[i].formula);
      EXPECT_EQ(again.lines[i].justification.refs, s.lines[i].justification.refs);
    }
  }
  const std::string header = "{\"system\": \"KB2\", \"vars\": {\"p\": \"s1\"}}\n";
  try {
    parse_proof_script(header + "{\"index\": 1, \"formula\": \"p -> p\", \"rule\": \"pl\"}\n{\"index\": 2,\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_proof_script(header + "{\"index\": 1, \"formula\": \"p -> p\", \"rule\": \"magic\"}\n"),
               ParseError);
  EXPECT_THROW(parse_proof_script(header + "{\"index\": 1, \"formula\": \"p &\", \"rule\": \"pl\"}\n"), ParseError);
  EXPECT_THROW(parse_proof_script("{\"system\": \"S4\"}\n"), Error);
}
