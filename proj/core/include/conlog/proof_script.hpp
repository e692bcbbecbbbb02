#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conlog/proof.hpp"

namespace conlog {

/// A derivation as stored on disk: one JSON object per line.
///
///   {"system": "KB2", "vars": {"p": "s1"}, "premises": ["p -> q"], "goal": "..."}
///   {"index": 1, "formula": "p -> q", "rule": "premise", "refs": [1]}
///   {"index": 2, "formula": "...", "rule": "ax:K", "subst": {"phi": "p"}}
///   {"index": 3, "formula": "...", "rule": "mp", "refs": [1, 2]}
///   {"index": 4, "formula": "box ~q", "rule": "ug:dia:1", "refs": [3]}
///
/// The first object is the header; "vars", "premises" and "goal" are
/// optional. Rules: premise, mp, ug[:modality[:position]], ax[:scheme]
/// (pl is short for ax:PL). Blank lines and lines starting with '#' are
/// skipped.
struct ProofScript {
  std::string system = "KB2";
  std::vector<Formula> premises;
  std::optional<Formula> goal;
  std::vector<ProofLine> lines;
};

/// Throws ParseError with the 1-based line of the offending object.
ProofScript parse_proof_script(std::string_view text);
std::string serialize_proof_script(const ProofScript& script);

/// check_proof on the script's own system, premises and goal.
Verdict check_script(const ProofScript& script);

/// The KB2 image of a KF script (translate_proof on the lines, rho on the
/// premises and goal).
ProofScript translate_script(const ProofScript& kf_script);

}  // namespace conlog
