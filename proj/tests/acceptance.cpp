// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
// Counts, seeds and time limits are pinned below.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "conlog/error.hpp"
#include "conlog/io.hpp"
#include "conlog/lattice.hpp"
#include "conlog/logical_concepts.hpp"
#include "conlog/proof.hpp"
#include "conlog/proof_script.hpp"
#include "conlog/random.hpp"
#include "conlog/semantics.hpp"
#include "conlog/syntax.hpp"
#include "conlog/translate.hpp"
#include "oracles.hpp"

using namespace conlog;
namespace fs = std::filesystem;

namespace {

constexpr double kK0TimeLimitMs = 1000.0;
constexpr int kEnumContexts = 200;
constexpr std::size_t kEnumMaxSide = 6;
constexpr int kIdentityFormulas = 500;
constexpr int kTranslationFormulas = 500;
constexpr int kValuationsPerFormula = 4;
constexpr std::size_t kModelMaxSide = 5;
constexpr std::size_t kMaxDepth = 4;
constexpr int kInstancesPerScheme = 200;
constexpr int kSoundnessFrames = 50;
constexpr std::size_t kSoundnessMaxSide = 4;
constexpr std::size_t kExpectedMutations = 20;
constexpr int kQuotientContexts = 20;
constexpr std::size_t kQuotientMaxSide = 4;
constexpr std::size_t kCorpusFiles = 10;

const std::string kData = CONLOG_DATA_DIR;

struct Result {
  bool pass = true;
  std::string detail;
};

void fail(Result& r, const std::string& why) {
  if (r.pass) r.detail = why;
  r.pass = false;
}

FormalContext k0() { return FormalContext::from_rows({"g1", "g2"}, {"m1", "m2"}, {"X.", "XX"}); }

std::vector<oracle::Pair> as_pairs(const std::vector<SemanticConcept>& cs) {
  std::vector<oracle::Pair> out;
  for (const auto& c : cs) out.push_back({oracle::to_set(c.extent), oracle::to_set(c.intent)});
  return out;
}

FormulaShape shape(Dialect d, std::size_t depth) {
  FormulaShape s;
  s.dialect = d;
  s.depth = depth;
  return s;
}

Result criterion1() {
  Result r;
  const auto k = k0();
  const oracle::Ctx c(k);
  using P = oracle::Pair;
  const std::vector<std::vector<P>> want = {
      {{{1}, {0, 1}}, {{0, 1}, {0}}},
      {{{}, {}}, {{0}, {0}}, {{0, 1}, {0, 1}}},
      {{{}, {}}, {{1}, {1}}, {{0, 1}, {0, 1}}},
  };
  const ConceptKind kinds[] = {ConceptKind::FC, ConceptKind::PC, ConceptKind::OC};
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::vector<SemanticConcept>> got;
  for (ConceptKind kind : kinds) got.push_back(enumerate_concepts(k, kind));
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  for (std::size_t i = 0; i < 3; ++i) {
    if (as_pairs(got[i]) != want[i]) fail(r, std::string(kind_name(kinds[i])) + " list differs");
    if (oracle::concepts(c, kinds[i]) != want[i]) fail(r, std::string(kind_name(kinds[i])) + " oracle differs");
  }
  if (ms >= kK0TimeLimitMs) fail(r, "took " + std::to_string(ms) + " ms");
  std::ostringstream d;
  d << got[0].size() << " FC / " << got[1].size() << " PC / " << got[2].size() << " OC in " << ms << " ms (limit "
    << kK0TimeLimitMs << " ms)";
  if (r.pass) r.detail = d.str();
  return r;
}

std::vector<FormalContext> enum_contexts() {
  Rng rng(2001);
  std::vector<FormalContext> out;
  for (int i = 0; i < kEnumContexts; ++i) out.push_back(random_context(rng, 1, kEnumMaxSide, 1, kEnumMaxSide));
  return out;
}

Result criterion2() {
  Result r;
  std::size_t mismatches = 0;
  std::size_t concepts = 0;
  for (const auto& k : enum_contexts()) {
    const oracle::Ctx c(k);
    for (ConceptKind kind : {ConceptKind::FC, ConceptKind::PC, ConceptKind::OC}) {
      const auto fast = enumerate_concepts(k, kind);
      concepts += fast.size();
      if (fast != brute_force_concepts(k, kind) || as_pairs(fast) != oracle::concepts(c, kind)) ++mismatches;
    }
  }
  if (mismatches) fail(r, std::to_string(mismatches) + " mismatches");
  if (r.pass) r.detail = std::to_string(kEnumContexts) + " contexts x 3 kinds, " + std::to_string(concepts) + " concepts, 0 mismatches";
  return r;
}

Result criterion3() {
  Result r;
  std::size_t clauses = 0;
  for (const auto& k : enum_contexts()) {
    const YaoReport rep = verify_yao_isomorphisms(k);
    const std::size_t sizes[] = {enumerate_concepts(k, ConceptKind::FC).size(),
                                 enumerate_concepts(k, ConceptKind::PC).size(),
                                 enumerate_concepts(k, ConceptKind::FC).size()};
    for (std::size_t i = 0; i < rep.clauses.size(); ++i) {
      const auto& cl = rep.clauses[i];
      if (!cl.passed) fail(r, "clause " + cl.name + ": " + cl.failure);
      if (cl.bijection.size() != sizes[i]) fail(r, "clause " + cl.name + ": no bijection exhibited");
      ++clauses;
    }
  }
  if (clauses != 3u * kEnumContexts) fail(r, "expected 3 clauses per context");
  if (r.pass) r.detail = std::to_string(clauses) + " clauses (a, b, c) with explicit bijections";
  return r;
}

Result criterion4() {
  Result r;
  Rng rng(4004);
  std::size_t checks = 0;
  for (int i = 0; i < kIdentityFormulas; ++i) {
    const auto k = random_context(rng, 1, kModelMaxSide, 1, kModelMaxSide);
    const SortedFrame f = context_to_frame(k);
    const Dialect d = i % 2 ? Dialect::window : Dialect::rough_set;
    const Sort s = rng.chance(1, 2) ? kObjects : kAttributes;
    const FormulaShape sh = shape(d, kMaxDepth - 1);
    const Formula phi = random_formula(rng, s, sh);
    for (int v = 0; v < kValuationsPerFormula; ++v) {
      const Model m(f, random_valuation(rng, f, sh.variables));
      const SortedSubset t = truth_set(m, phi);
      // Each operator applied to the truth set equals the truth set of the
      // modal formula: dia, box, boxm from s1; dia-, box-, boxm- from s2.
      const std::vector<std::pair<OperatorKind, Formula>> cases =
          s == kObjects ? std::vector<std::pair<OperatorKind, Formula>>{{OperatorKind::poss, ts::dia(phi)},
                                                                        {OperatorKind::nec, ts::box(phi)},
                                                                        {OperatorKind::plus, ts::win(phi)}}
                        : std::vector<std::pair<OperatorKind, Formula>>{{OperatorKind::poss_inv, ts::dia_inv(phi)},
                                                                        {OperatorKind::nec_inv, ts::box_inv(phi)},
                                                                        {OperatorKind::minus, ts::win_inv(phi)}};
      const oracle::Ctx c(k);
      for (const auto& [op, modal] : cases) {
        const SortedSubset lhs = apply_operator(op, t, k);
        if (lhs != truth_set(m, modal)) fail(r, std::string(operator_name(op)) + " identity fails on " + to_string(phi));
        if (oracle::to_set(lhs) != oracle::apply(op, c, oracle::to_set(t))) fail(r, "operator disagrees with oracle");
        ++checks;
      }
    }
  }
  if (r.pass) {
    r.detail = std::to_string(kIdentityFormulas) + " formulas, " + std::to_string(checks) + " pointwise identities, 0 violations";
  }
  return r;
}

Result criterion5() {
  Result r;
  Rng rng(5005);
  std::size_t worlds = 0;
  for (int i = 0; i < kTranslationFormulas; ++i) {
    const auto k = random_context(rng, 1, kModelMaxSide, 1, kModelMaxSide);
    const SortedFrame f = context_to_frame(k);
    const SortedFrame fc = context_to_frame(complement_context(k));
    const Sort s = rng.chance(1, 2) ? kObjects : kAttributes;
    const FormulaShape sh = shape(Dialect::window, kMaxDepth);
    const Formula phi = random_formula(rng, s, sh);
    const Formula t = translate_rho(phi);
    for (int v = 0; v < kValuationsPerFormula; ++v) {
      const Valuation val = random_valuation(rng, f, sh.variables);
      // Evaluated world by world through satisfies, independently of truth_set.
      const Model m(f, val);
      const Model mc(fc, val);
      for (std::size_t w = 0; w < f.carrier_size(s); ++w) {
        if (satisfies(m, s, w, phi) != satisfies(mc, s, w, t)) fail(r, "violated at " + to_string(phi));
        ++worlds;
      }
    }
  }
  if (r.pass) r.detail = std::to_string(kTranslationFormulas) + " formulas, " + std::to_string(worlds) + " world checks, 0 violations";
  return r;
}

Result criterion6() {
  Result r;
  Rng rng(6006);
  std::vector<SortedFrame> frames;
  for (int i = 0; i < kSoundnessFrames; ++i) {
    frames.push_back(context_to_frame(random_context(rng, 1, kSoundnessMaxSide, 1, kSoundnessMaxSide)));
    if (!frames.back().bidirectional()) fail(r, "context frame not bidirectional");
  }
  std::size_t instances = 0;
  std::size_t checks = 0;
  for (const ProofSystem& sys : {ProofSystem::kb2(), ProofSystem::kf()}) {
    const Dialect d = sys.id() == SystemId::KF ? Dialect::window : Dialect::rough_set;
    FormulaShape sh = shape(d, 2);
    sh.variables = {{"p", kObjects}, {"q", kAttributes}, {"r", kObjects}};
    for (const auto& scheme : sys.schemes()) {
      for (int i = 0; i < kInstancesPerScheme; ++i) {
        Substitution sub;
        for (const auto& v : variables(scheme.pattern)) sub.emplace(v, random_formula(rng, v.sort, sh));
        const Formula inst = substitute(scheme.pattern, sub);
        if (!match_axiom(inst, sys, scheme.name)) fail(r, "instance not recognized: " + to_string(inst));
        for (const auto& f : frames) {
          if (!frame_valid(f, inst)) fail(r, scheme.name + " instance invalid: " + to_string(inst));
          ++checks;
        }
        ++instances;
      }
    }
  }
  // Non-converse frame: dia relates m1 to g1 but dia- is empty.
  std::map<std::string, Relation> rel{{"dia", Relation{{{0, 0}}}}, {"dia-", Relation{}}};
  bool refused = false;
  try {
    SortedFrame(Signature::rough_set(), {{"g1", "g2"}, {"m1"}}, rel, true);
  } catch (const FrameError&) {
    refused = true;
  }
  if (!refused) fail(r, "non-converse frame accepted as bidirectional");
  const SortedFrame lop(Signature::rough_set(), {{"g1", "g2"}, {"m1"}}, rel, false);
  if (frame_valid(lop, parse_formula("q -> box dia- q", kAttributes, Signature::rough_set()))) {
    fail(r, "B instance holds on the non-converse frame");
  }
  if (r.pass) {
    r.detail = std::to_string(instances) + " instances x " + std::to_string(kSoundnessFrames) + " frames = " +
               std::to_string(checks) + " validity checks; non-converse frame refused and falsifies B";
  }
  return r;
}

/// One token changed per entry: 1-based text line, old token, new token.
struct Mutation {
  int line;
  const char* from;
  const char* to;
};

constexpr Mutation kMutations[] = {
    {2, "\"premises\": [\"p -> q\"]", "\"premises\": [\"q -> q\"]"},
    {2, "\"goal\": \"box ~q -> box ~p\"", "\"goal\": \"box ~q -> dia ~p\""},
    {3, "\"p -> q\"", "\"q -> p\""},
    {3, "[1]", "[2]"},
    {4, "(~q -> ~p)", "(q -> ~p)"},
    {4, "\"pl\"", "\"ax:K\""},
    {5, "\"~q -> ~p\"", "\"~q -> p\""},
    {5, "[1, 2]", "[2, 1]"},
    {5, "[1, 2]", "[1, 1]"},
    {5, "\"mp\"", "\"pl\""},
    {6, "\"box (~q -> ~p)\"", "\"dia (~q -> ~p)\""},
    {6, "ug:dia\"", "ug:dia-\""},
    {6, "[3]", "[2]"},
    {6, "\"ug:dia\"", "\"mp\""},
    {7, "ax:K", "ax:B"},
    {7, "\"phi1\": \"~q\"", "\"phi1\": \"q\""},
    {7, "(box ~q -> box ~p)", "(box ~p -> box ~q)"},
    {8, "\"box ~q -> box ~p\"", "\"box ~p -> box ~q\""},
    {8, "[4, 5]", "[5, 4]"},
    {8, "\"mp\"", "\"ax:K\""},
};

std::string mutate(const std::string& text, const Mutation& m) {
  std::istringstream in(text);
  std::string out;
  int n = 0;
  for (std::string line; std::getline(in, line);) {
    if (++n == m.line) {
      const auto p = line.find(m.from);
      if (p == std::string::npos) throw Error("mutation target missing: " + std::string(m.from));
      line.replace(p, std::string(m.from).size(), m.to);
    }
    out += line + "\n";
  }
  return out;
}

bool rejected(const std::string& text, std::string& how) {
  try {
    const Verdict v = check_script(parse_proof_script(text));
    how = v.accepted ? "accepted" : "line " + std::to_string(v.line);
    return !v.accepted;
  } catch (const Error& e) {
    how = std::string("parse: ") + e.what();
    return true;
  }
}

Result criterion7() {
  Result r;
  const std::string antitone = read_file(kData + "/proofs/antitone_kb2.proof");
  const Verdict v = check_script(parse_proof_script(antitone));
  if (!v.accepted) fail(r, "antitone derivation rejected: " + v.reason);
  std::size_t killed = 0;
  std::size_t by_kernel = 0;
  for (const Mutation& m : kMutations) {
    std::string how;
    const std::string text = mutate(antitone, m);
    if (text == antitone) fail(r, "mutation left the script unchanged");
    if (rejected(text, how)) {
      ++killed;
      if (how.rfind("line", 0) == 0) ++by_kernel;
    } else {
      fail(r, std::string("mutation survived: ") + m.from + " -> " + m.to);
    }
  }
  if (killed != kExpectedMutations) fail(r, std::to_string(killed) + " of " + std::to_string(kExpectedMutations) + " rejected");
  std::size_t translated = 0;
  for (const auto& e : fs::directory_iterator(kData + "/proofs")) {
    const ProofScript s = parse_proof_script(read_file(e.path().string()));
    if (s.system != "KF") continue;
    const Verdict t = check_script(translate_script(s));
    if (!t.accepted) fail(r, e.path().filename().string() + " translation rejected at line " + std::to_string(t.line));
    ++translated;
  }
  if (translated == 0) fail(r, "no KF proofs shipped");
  if (r.pass) {
    r.detail = "antitone accepted; " + std::to_string(killed) + "/" + std::to_string(kExpectedMutations) +
               " mutations rejected (" + std::to_string(by_kernel) + " by the kernel); " + std::to_string(translated) +
               " KF proofs translated and accepted";
  }
  return r;
}

Result criterion8() {
  Result r;
  Rng rng(8008);
  std::size_t checks = 0;
  for (int i = 0; i < kQuotientContexts; ++i) {
    const auto k = random_context(rng, 1, kQuotientMaxSide, 1, kQuotientMaxSide);
    const SortedFrame f = context_to_frame(k);
    std::vector<LogicalPair> fc_family;
    for (ConceptKind kind : {ConceptKind::FC, ConceptKind::PC, ConceptKind::OC}) {
      std::vector<LogicalPair> fam;
      for (const char* s : {"p", "q", "p & q", "#t", "#f"}) fam.push_back(generate_pair(parse_formula(s, kObjects), kind));
      if (kind == ConceptKind::FC) fc_family = fam;
      const LawReport rep = verify_quotient_lattice(fam, kind, f);
      for (const auto& law : rep.laws) {
        if (!law.passed) fail(r, std::string(kind_name(kind)) + " " + law.law + ": " + law.witness);
        checks += law.instances;
      }
    }
    const LawReport iso = verify_isomorphisms(fc_family, k);
    for (const auto& law : iso.laws) {
      if (!law.passed) fail(r, law.law + ": " + law.witness);
      checks += law.instances;
    }
  }
  if (r.pass) r.detail = std::to_string(kQuotientContexts) + " contexts, " + std::to_string(checks) + " law and isomorphism checks";
  return r;
}

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (auto p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) s.replace(p, from.size(), to);
  return s;
}

/// Runs the installed-layout CLI binary and renders the same transcript
/// format as the golden files.
std::string run_binary(const std::vector<std::string>& args) {
  const fs::path err_path = fs::temp_directory_path() / ("conlog_acceptance_" + std::to_string(::getpid()) + ".err");
  std::string cmd = quote(CONLOG_CLI_PATH);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>" + quote(err_path.string());
  std::string out;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) throw Error("cannot run " + cmd);
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  const int status = ::pclose(p);
  const std::string err = read_file(err_path.string());
  fs::remove(err_path);
  if (!err.empty()) out += "[stderr]\n" + err;
  out += "[exit " + std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1) + "]\n";
  return replace_all(out, kData, "@DATA@");
}

Result criterion9() {
  Result r;
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(kData + "/contexts")) {
    const std::string text = read_file(e.path().string());
    const std::string back = e.path().extension() == ".cxt" ? serialize_cxt(parse_cxt_document(text))
                                                            : serialize_csv(parse_csv_document(text));
    if (back != text) fail(r, e.path().filename().string() + " does not round-trip");
    ++files;
  }
  if (files != kCorpusFiles) fail(r, "corpus has " + std::to_string(files) + " files");
  std::size_t goldens = 0;
  for (const auto& e : fs::directory_iterator(CONLOG_GOLDEN_DIR)) {
    if (e.path().extension() != ".args") continue;
    std::vector<std::string> args;
    std::istringstream in(read_file(e.path().string()));
    for (std::string line; std::getline(in, line);) args.push_back(replace_all(line, "@DATA@", kData));
    fs::path want = e.path();
    want.replace_extension(".out");
    if (run_binary(args) != read_file(want.string())) fail(r, e.path().filename().string() + " transcript differs");
    ++goldens;
  }
  if (goldens == 0) fail(r, "no golden transcripts");
  if (r.pass) r.detail = std::to_string(files) + " corpus files bit-exact; " + std::to_string(goldens) + " CLI transcripts byte-identical";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria = {
      {"K0 concept lists and runtime", criterion1},
      {"lectic enumeration equals brute force", criterion2},
      {"complement isomorphisms with bijections", criterion3},
      {"truth-set identities of the operators", criterion4},
      {"rho translation preserves truth", criterion5},
      {"axiom instances valid; non-converse frame refused", criterion6},
      {"proof kernel: antitone, mutations, KF translations", criterion7},
      {"quotient lattice laws and isomorphisms", criterion8},
      {"I/O round trips and CLI transcripts", criterion9},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %zu %s: %s (%.2fs): %s\n", i + 1, r.pass ? "PASS" : "FAIL", criteria[i].first, s,
                r.detail.c_str());
    std::fflush(stdout);
    failures += r.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
