#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "conlog/formula.hpp"
#include "conlog/frame.hpp"
#include "conlog/signature.hpp"

namespace conlog {

/// An axiom scheme: every variable of `pattern` is a metavariable.
struct AxiomScheme {
  /// Family ("K", "Dual", "B", "K1", ...); a script may cite either the
  /// family or the exact name.
  std::string family;
  /// Exact name ("K_dia", "Dual_dia-", "B_dia", ...).
  std::string name;
  Formula pattern;
};

enum class SystemId { K, KB2, KF };

class ProofSystem {
 public:
  /// Normal multimodal system over the existential modalities of `sig`:
  /// PL, K^i for every argument position, Dual; MP and UG^i.
  static ProofSystem k(const Signature& sig);
  /// K over dia/dia- plus p -> box- dia p and q -> box dia- q.
  static ProofSystem kb2();
  /// PL, K1, B1, K2, B2 over boxm/boxm-; MP and the refutation-form UG.
  static ProofSystem kf();

  /// "K", "KB2" or "KF"; throws Error otherwise.
  static ProofSystem by_name(std::string_view name);

  SystemId id() const { return id_; }
  std::string_view name() const;
  const Signature& signature() const { return signature_; }
  /// In priority order. PL is not listed; it is decided by truth table.
  const std::vector<AxiomScheme>& schemes() const { return schemes_; }

 private:
  ProofSystem(SystemId id, Signature sig, std::vector<AxiomScheme> schemes)
      : id_(id), signature_(std::move(sig)), schemes_(std::move(schemes)) {}

  SystemId id_;
  Signature signature_;
  std::vector<AxiomScheme> schemes_;
};

/// Classical tautology check of the propositional skeleton: variables and
/// maximal modal subformulas (compared after normalization) become atoms.
/// Throws BudgetExceeded beyond 24 atoms.
bool is_tautology(const Formula& f);

struct AxiomMatch {
  std::string family;
  std::string name;
  /// Metavariable bindings (normalized formulas); empty for PL.
  Substitution substitution;
};

/// First scheme of `system` (PL first, then declaration order) of which `f`
/// is a substitution instance, both sides compared after normalization.
std::optional<AxiomMatch> match_axiom(const Formula& f, const ProofSystem& system);

/// Same, restricted to schemes whose family or name equals `scheme`.
std::optional<AxiomMatch> match_axiom(const Formula& f, const ProofSystem& system,
                                      std::string_view scheme);

enum class RuleKind { axiom, premise, mp, ug };

struct Justification {
  RuleKind kind = RuleKind::axiom;
  /// Axiom: scheme family or name; empty means "any".
  std::string scheme;
  /// Axiom: optional explicit substitution, checked when present.
  Substitution substitution;
  /// Premise: 1-based premise id. MP: {antecedent line, implication line}.
  /// UG: {cited line}.
  std::vector<std::size_t> refs;
  /// UG: optional modality name and 1-based argument position (0 = any).
  std::string modality;
  std::size_t position = 0;
};

struct ProofLine {
  std::size_t index = 0;
  Formula formula;
  Justification justification;
};

struct Verdict {
  bool accepted = false;
  /// 1-based line of the first rejection (0 for script-level problems).
  std::size_t line = 0;
  std::string reason;
  /// Premise ids the last line depends on.
  std::set<std::size_t> depends_on;
  /// True when UG was applied to a premise-dependent line; the conclusion
  /// then follows globally (model-wide) rather than locally.
  bool global = false;
  /// True when the last line is (p_1 & ... & p_n) -> goal for the declared
  /// premises, i.e. the premise-free style.
  bool implication_form = false;
};

/// Checks a Hilbert derivation line by line. Line indices must run 1..n.
/// When `goal` is given the last line must be the goal itself or, for a
/// premise-free script, (p_1 & ... & p_n) -> goal.
Verdict check_proof(const std::vector<ProofLine>& script, const std::vector<Formula>& premises,
                    const ProofSystem& system, const std::optional<Formula>& goal = std::nullopt);

/// Semantic cross-check of an accepted derivation on each frame: frame
/// validity of the conclusion when no premise is used, local consequence
/// from the premises it depends on, or global consequence when UG touched a
/// premise-dependent line. Returns false when the script is rejected.
bool soundness_probe(const ProofSystem& system, const std::vector<ProofLine>& script,
                     const std::vector<Formula>& premises, const std::vector<SortedFrame>& frames,
                     std::uint64_t budget);

/// Line-by-line translation of a window (KF) derivation into the rough-set
/// system: each formula is mapped by rho, MP/UG/premise lines carry over,
/// PL stays PL, and every K1/K2/B1/B2 line is expanded into a short KB2
/// derivation of its translation. Throws SignatureError when the script is
/// not over the window signature.
std::vector<ProofLine> translate_proof(const std::vector<ProofLine>& kf_script);

}  // namespace conlog
