#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "conlog/error.hpp"
#include "conlog/io.hpp"
#include "conlog/lattice.hpp"
#include "conlog/logical_concepts.hpp"
#include "conlog/proof_script.hpp"
#include "conlog/semantics.hpp"
#include "conlog/suites.hpp"
#include "conlog/syntax.hpp"
#include "conlog/translate.hpp"

namespace conlog::cli {

namespace {

enum class Format { text, dot, structured };

struct Options {
  std::string context_path;
  std::string kind = "fc";
  std::string klass;
  std::string side = "ext";
  std::string formula;
  std::string extent;
  std::string intent;
  std::string sort;
  std::vector<std::string> assignments;
  std::vector<std::string> premises;
  std::vector<std::string> probes;
  std::string proof_path;
  std::string suite = "all";
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 1;
  bool global = false;
  bool translate = false;
  Format format = Format::text;
};

/// Thrown for flag combinations CLI11 cannot express.
struct UsageError : Error {
  using Error::Error;
};

class Session {
 public:
  Session(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  int concepts();
  int lattice();
  int eval();
  int valid();
  int consequence();
  int translate();
  int member();
  int check_proof();
  int verify();

 private:
  const FormalContext& context() {
    if (!context_) context_ = load_context(o_.context_path);
    return *context_;
  }
  const SortedFrame& frame() {
    if (!frame_) frame_ = context_to_frame(context());
    return *frame_;
  }
  std::optional<Sort> sort_flag() const {
    if (o_.sort.empty()) return std::nullopt;
    auto s = Signature::two_sorted().find_sort(o_.sort);
    if (!s) throw UsageError("--sort must be 1 or 2");
    return s;
  }
  Formula parse(const std::string& text, std::optional<Sort> sort = std::nullopt) {
    const Signature& sig = Signature::two_sorted();
    return sort ? parse_formula(text, *sort, sig, &decls_) : parse_formula_any_sort(text, sig, &decls_);
  }
  ConceptKind kind() const { return parse_kind(o_.kind); }
  void no_dot(const char* command) const {
    if (o_.format == Format::dot) throw UsageError(std::string("--format dot is only available for lattice, not ") + command);
  }
  std::string pair_text(const SemanticConcept& c) {
    return "(" + format_subset(c.extent, context()) + ", " + format_subset(c.intent, context()) + ")";
  }
  std::string valuation(const Counterexample& c) {
    return c.valuation.empty() ? "(no variables)" : format_valuation(c.valuation, frame());
  }
  std::string world(const Counterexample& c) {
    return frame().carrier(c.sort)[c.world] + " (" + default_sort_name(c.sort) + ")";
  }
  int report_check(const CheckResult& r, const char* yes, const char* no, const char* command);

  const Options& o_;
  std::ostream& out_;
  std::optional<FormalContext> context_;
  std::optional<SortedFrame> frame_;
  SortDeclarations decls_;
};

int Session::concepts() {
  no_dot("concepts");
  const auto cs = enumerate_concepts(context(), kind());
  if (o_.format == Format::structured) {
    std::vector<std::string> items;
    for (const auto& c : cs) {
      items.push_back("extent=" + format_subset(c.extent, context()) + " intent=" + format_subset(c.intent, context()));
    }
    StructuredWriter w;
    w.field("command", "concepts").field("kind", kind_name(kind())).field("count", std::to_string(cs.size()));
    w.list("concepts", items);
    out_ << w.str();
    return kOk;
  }
  out_ << kind_name(kind()) << " concepts: " << cs.size() << "\n";
  for (const auto& c : cs) out_ << "  " << pair_text(c) << "\n";
  return kOk;
}

int Session::lattice() {
  const ConceptKind k = kind();
  const ConceptLattice l = build_lattice(enumerate_concepts(context(), k), k, context());
  if (o_.format == Format::dot) {
    out_ << export_dot(l, context());
    return kOk;
  }
  std::vector<std::string> nodes;
  std::vector<std::string> covers;
  for (std::size_t i = 0; i < l.size(); ++i) nodes.push_back("c" + std::to_string(i) + " " + pair_text(l.concepts()[i]));
  for (const auto& [lo, hi] : l.covers()) covers.push_back("c" + std::to_string(lo) + " < c" + std::to_string(hi));
  if (o_.format == Format::structured) {
    StructuredWriter w;
    w.field("command", "lattice").field("kind", kind_name(k)).field("count", std::to_string(l.size()));
    w.list("concepts", nodes).list("covers", covers);
    w.field("top", "c" + std::to_string(l.top())).field("bottom", "c" + std::to_string(l.bottom()));
    out_ << w.str();
    return kOk;
  }
  out_ << kind_name(k) << " lattice: " << l.size() << " concepts, " << l.covers().size() << " covering pairs\n";
  for (const auto& n : nodes) out_ << "  " << n << "\n";
  out_ << "top: c" << l.top() << "\nbottom: c" << l.bottom() << "\ncovers:\n";
  for (const auto& c : covers) out_ << "  " << c << "\n";
  return kOk;
}

int Session::eval() {
  no_dot("eval");
  if (o_.formula.empty()) throw UsageError("eval needs --formula");
  const Formula f = parse(o_.formula, sort_flag());
  Valuation v;
  for (const auto& text : o_.assignments) {
    RawAssignment a = parse_assignment(text);
    std::optional<Sort> s;
    if (a.sort) {
      s = Signature::two_sorted().find_sort(*a.sort);
      if (!s) throw UsageError("unknown sort '" + *a.sort + "' in --assign " + text);
    } else if (auto it = decls_.find(a.name); it != decls_.end()) {
      s = it->second;
    } else {
      throw UsageError("cannot tell the sort of '" + a.name + "'; write " + a.name + ":1 or " + a.name + ":2");
    }
    v[VarKey{a.name, *s}] = context().subset(*s, a.members);
  }
  const Model m(frame(), v);
  const SortedSubset t = truth_set(m, f);
  if (o_.format == Format::structured) {
    StructuredWriter w;
    w.field("command", "eval").field("formula", to_string(f)).field("sort", default_sort_name(f.sort()));
    w.field("truth_set", format_subset(t, context()));
    out_ << w.str();
    return kOk;
  }
  out_ << to_string(f) << " : " << default_sort_name(f.sort()) << "\n";
  out_ << "truth set: " << format_subset(t, context()) << "\n";
  return kOk;
}

int Session::report_check(const CheckResult& r, const char* yes, const char* no, const char* command) {
  if (o_.format == Format::structured) {
    StructuredWriter w;
    w.field("command", command).field("result", r.holds ? yes : no);
    w.field("valuations", "2^" + std::to_string(r.exponent));
    if (r.counterexample) {
      w.field("counterexample", valuation(*r.counterexample));
      w.field("world", world(*r.counterexample));
    }
    out_ << w.str();
  } else {
    out_ << (r.holds ? yes : no) << " (2^" << r.exponent << " valuations)\n";
    if (r.counterexample) {
      out_ << "counterexample: " << valuation(*r.counterexample) << "\n";
      out_ << "fails at: " << world(*r.counterexample) << "\n";
    }
  }
  return r.holds ? kOk : kPropertyFails;
}

int Session::valid() {
  no_dot("valid");
  if (o_.formula.empty()) throw UsageError("valid needs --formula");
  const Formula f = parse(o_.formula, sort_flag());
  return report_check(check_frame_validity(frame(), f, o_.budget), "valid", "invalid", "valid");
}

int Session::consequence() {
  no_dot("consequence");
  if (o_.formula.empty()) throw UsageError("consequence needs --formula for the conclusion");
  // The conclusion goes first so that its variables fix the premises' sorts.
  const Formula c = parse(o_.formula, sort_flag());
  std::vector<Formula> premises;
  for (const auto& p : o_.premises) premises.push_back(o_.global ? parse(p) : parse(p, c.sort()));
  const CheckResult r = o_.global ? check_global_consequence(frame(), premises, c, o_.budget)
                                  : check_local_consequence(frame(), premises, c, o_.budget);
  return report_check(r, "follows", "does not follow", "consequence");
}

int Session::translate() {
  no_dot("translate");
  if (!o_.proof_path.empty()) {
    const ProofScript kf = parse_proof_script(read_file(o_.proof_path));
    out_ << serialize_proof_script(translate_script(kf));
    return kOk;
  }
  if (o_.formula.empty()) throw UsageError("translate needs --formula or --proof");
  const Formula f = parse(o_.formula, sort_flag());
  const Formula t = translate_rho(f);
  if (o_.format == Format::structured) {
    StructuredWriter w;
    w.field("command", "translate").field("formula", to_string(f)).field("rho", to_string(t));
    out_ << w.str();
  } else {
    out_ << to_string(t) << "\n";
  }
  return kOk;
}

int Session::member() {
  no_dot("member");
  if (o_.klass.empty()) throw UsageError("member needs --class");
  const ConceptKind k = parse_kind(o_.klass);
  std::string subject;
  std::string label;
  PairCheck result;
  if (!o_.extent.empty() || !o_.intent.empty()) {
    if (o_.extent.empty() || o_.intent.empty()) throw UsageError("a pair needs both --extent and --intent");
    const LogicalPair pair{parse(o_.extent, kObjects), parse(o_.intent, kAttributes)};
    subject = "(" + to_string(pair.extent) + ", " + to_string(pair.intent) + ")";
    label = std::string(kind_name(k));
    result = check_member_pair(pair, k, frame(), o_.budget);
  } else {
    if (o_.formula.empty()) throw UsageError("member needs --formula, or --extent and --intent");
    std::string side = o_.side;
    if (side != "ext" && side != "int") throw UsageError("--side must be ext or int");
    const FormulaClass c = class_of(k, side == "ext" ? Side::extent : Side::intent);
    const Formula f = parse(o_.formula, class_sort(c));
    subject = to_string(f);
    label = std::string(class_name(c));
    CheckResult r = check_member_class(f, c, frame(), o_.budget);
    result.holds = r.holds;
    if (!r.holds) {
      result.failed_condition = class_condition(f, c);
      result.counterexample = r.counterexample;
    }
  }
  const std::string verdict = result.holds ? "member" : "not a member";
  if (o_.format == Format::structured) {
    StructuredWriter w;
    w.field("command", "member").field("subject", subject).field("class", label).field("result", verdict);
    if (result.failed_condition) w.field("failed", to_string(*result.failed_condition));
    if (result.counterexample) {
      w.field("counterexample", valuation(*result.counterexample));
      w.field("world", world(*result.counterexample));
    }
    out_ << w.str();
  } else {
    out_ << subject << ": " << verdict << " of " << label << "\n";
    if (result.failed_condition) out_ << "failed: " << to_string(*result.failed_condition) << "\n";
    if (result.counterexample) {
      out_ << "counterexample: " << valuation(*result.counterexample) << "\n";
      out_ << "fails at: " << world(*result.counterexample) << "\n";
    }
  }
  return result.holds ? kOk : kPropertyFails;
}

int Session::check_proof() {
  no_dot("check-proof");
  ProofScript script = parse_proof_script(read_file(o_.proof_path));
  if (o_.translate) script = translate_script(script);
  const Verdict v = check_script(script);
  std::string deps;
  for (std::size_t d : v.depends_on) deps += (deps.empty() ? "" : ",") + std::to_string(d);
  std::optional<bool> probe;
  if (v.accepted && !o_.probes.empty()) {
    std::vector<SortedFrame> frames;
    for (const auto& p : o_.probes) frames.push_back(context_to_frame(load_context(p)));
    probe = soundness_probe(ProofSystem::by_name(script.system), script.lines, script.premises, frames, o_.budget);
  }
  const std::string consequence = v.depends_on.empty() ? "theorem" : v.global ? "global" : "local";
  if (o_.format == Format::structured) {
    StructuredWriter w;
    w.field("command", "check-proof").field("system", script.system);
    w.field("result", v.accepted ? "accepted" : "rejected");
    w.field("lines", std::to_string(script.lines.size()));
    if (v.accepted) {
      w.field("depends_on", "[" + deps + "]").field("consequence", consequence);
    } else {
      w.field("line", std::to_string(v.line)).field("reason", v.reason);
    }
    if (probe) w.field("soundness_probe", *probe ? "pass" : "fail");
    out_ << w.str();
  } else if (v.accepted) {
    out_ << "accepted: " << script.system << ", " << script.lines.size() << " lines, " << consequence;
    if (!deps.empty()) out_ << " from premises " << deps;
    out_ << "\n";
    if (probe) out_ << "soundness probe: " << (*probe ? "pass" : "fail") << "\n";
  } else {
    out_ << "rejected at line " << v.line << ": " << v.reason << "\n";
  }
  return v.accepted && probe.value_or(true) ? kOk : kPropertyFails;
}

int Session::verify() {
  no_dot("verify");
  std::vector<std::string> suites;
  if (o_.suite == "all") {
    suites = suite_names();
  } else {
    suites = {o_.suite};
  }
  bool all = true;
  StructuredWriter w;
  w.field("command", "verify").field("seed", std::to_string(o_.seed));
  for (const auto& s : suites) {
    const SuiteReport r = run_suite(s, context(), o_.seed, o_.budget);
    all = all && r.passed();
    std::vector<std::string> items;
    for (const auto& l : r.lines) items.push_back(l.label + ": " + (l.passed ? "pass" : "FAIL") + " (" + l.detail + ")");
    if (o_.format == Format::structured) {
      w.field("suite", r.name).field("result", r.passed() ? "pass" : "fail").list("checks", items);
    } else {
      out_ << "suite " << r.name << ": " << (r.passed() ? "pass" : "FAIL") << "\n";
      for (const auto& i : items) out_ << "  " << i << "\n";
    }
  }
  if (o_.format == Format::structured) out_ << w.str();
  return all ? kOk : kPropertyFails;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Concept lattices and two-sorted modal logic of formal contexts", "conlog"};
  app.require_subcommand(1);
  std::map<std::string, Format> formats{{"text", Format::text}, {"dot", Format::dot}, {"structured", Format::structured}};

  auto common = [&](CLI::App* sub, bool needs_context) {
    sub->add_option("--format", o.format, "text, dot or structured")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--budget", o.budget, "largest number of valuations an exhaustive check may enumerate")
        ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
    if (needs_context) sub->add_option("context", o.context_path, "context file (.cxt or .csv)")->required();
  };
  auto kind_opt = [&](CLI::App* sub) {
    sub->add_option("--kind", o.kind, "fc, pc or oc")->check(CLI::IsMember({"fc", "pc", "oc"}, CLI::ignore_case));
  };
  auto sort_opt = [&](CLI::App* sub) {
    sub->add_option("--sort", o.sort, "sort of the formula: 1 (objects) or 2 (attributes)")
        ->check(CLI::IsMember({"1", "2", "s1", "s2"}));
  };

  auto* concepts = app.add_subcommand("concepts", "list the concepts of a context");
  common(concepts, true);
  kind_opt(concepts);

  auto* lattice = app.add_subcommand("lattice", "concept lattice with its covering relation");
  common(lattice, true);
  kind_opt(lattice);

  auto* eval = app.add_subcommand("eval", "truth set of a formula under a valuation");
  common(eval, true);
  eval->add_option("--formula", o.formula, "formula")->required();
  eval->add_option("--assign", o.assignments, "valuation entry such as p={g1,g2} (repeatable)");
  sort_opt(eval);

  auto* valid = app.add_subcommand("valid", "frame validity by exhaustive valuation");
  common(valid, true);
  valid->add_option("--formula", o.formula, "formula")->required();
  sort_opt(valid);

  auto* conseq = app.add_subcommand("consequence", "local (or global) consequence on the context frame");
  common(conseq, true);
  conseq->add_option("--formula", o.formula, "conclusion")->required();
  conseq->add_option("--premise", o.premises, "premise (repeatable)");
  conseq->add_flag("--global", o.global, "premises and conclusion true everywhere");
  sort_opt(conseq);

  auto* translate = app.add_subcommand("translate", "rho translation of a window formula or KF proof");
  common(translate, false);
  translate->add_option("--formula", o.formula, "window formula");
  translate->add_option("--proof", o.proof_path, "KF proof script");
  sort_opt(translate);

  auto* member = app.add_subcommand("member", "membership in a formula class or a concept-pair class");
  common(member, true);
  member->add_option("--class", o.klass, "pc, oc or fc")->check(CLI::IsMember({"fc", "pc", "oc"}, CLI::ignore_case));
  member->add_option("--side", o.side, "ext or int")->check(CLI::IsMember({"ext", "int"}));
  member->add_option("--formula", o.formula, "formula for a class check");
  member->add_option("--extent", o.extent, "extent formula of a pair");
  member->add_option("--intent", o.intent, "intent formula of a pair");

  auto* proof = app.add_subcommand("check-proof", "check a Hilbert derivation");
  common(proof, false);
  proof->add_option("proof", o.proof_path, "proof script")->required();
  proof->add_flag("--translate", o.translate, "check the rough-set translation of a KF script");
  proof->add_option("--probe", o.probes, "context whose frame the conclusion is checked on (repeatable)");

  auto* verify = app.add_subcommand("verify", "run the verification suites on a context");
  common(verify, true);
  verify->add_option("--suite", o.suite, "yao, translation, lattice, iso or all")
      ->check(CLI::IsMember({"yao", "translation", "lattice", "iso", "all"}));
  verify->add_option("--seed", o.seed, "seed for randomized checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  Session s(o, out);
  try {
    if (*concepts) return s.concepts();
    if (*lattice) return s.lattice();
    if (*eval) return s.eval();
    if (*valid) return s.valid();
    if (*conseq) return s.consequence();
    if (*translate) return s.translate();
    if (*member) return s.member();
    if (*proof) return s.check_proof();
    if (*verify) return s.verify();
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const InvariantViolation& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kPropertyFails;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace conlog::cli
