#pragma once

#include <map>
#include <string>
#include <string_view>

#include "conlog/formula.hpp"
#include "conlog/signature.hpp"

namespace conlog {

/// Variable sort declarations shared across several parses (a proof script,
/// a CLI invocation). Filled in as variables are first seen.
using SortDeclarations = std::map<std::string, Sort>;

/// Parses the concrete syntax
///
///   formula := iff
///   iff     := imp ('<->' imp)*          left-associative
///   imp     := or ('->' imp)?            right-associative
///   or      := and ('|' and)*
///   and     := unary ('&' unary)*
///   unary   := '~' unary | MOD unary | '<' NAME '>' '(' args ')'
///            | '[' NAME ']' '(' args ')' | atom
///   atom    := VAR | '#f' | '#t' | '(' formula ')'
///   MOD     := 'dia' | 'box' | 'dia-' | 'box-' | 'boxm' | 'boxm-'
///
/// Variables may carry a sort suffix (`p:1`, `q:s2`). Unsuffixed variables
/// take their sort from `decls` or, failing that, from the position they
/// occupy; the choice is recorded in `decls`. `<R>(...)` and `[R](...)` are
/// the diamond and box of an arbitrary (polyadic) modality R.
///
/// Throws ParseError (with column), SortError (naming the offending
/// subterm) or SignatureError (modality outside `sig`).
Formula parse_formula(std::string_view text, Sort expected, const Signature& sig,
                      SortDeclarations* decls = nullptr);

/// As above with the two-sorted signature.
Formula parse_formula(std::string_view text, Sort expected);

/// Parses a formula whose sort is not known in advance. Fails with SortError
/// when the text admits no sort or more than one.
Formula parse_formula_any_sort(std::string_view text, const Signature& sig,
                               SortDeclarations* decls = nullptr);

struct PrintOptions {
  /// Suffix every variable with its sort (`p:1`), so the output re-parses to
  /// the same tree without declarations.
  bool annotate_sorts = false;
};

std::string to_string(const Formula& f, PrintOptions options = {});

}  // namespace conlog
