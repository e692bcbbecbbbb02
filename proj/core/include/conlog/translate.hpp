#pragma once

#include "conlog/formula.hpp"

namespace conlog {

/// Translation of window formulas into the rough-set language:
/// boxm phi |-> box ~rho(phi), boxm- phi |-> box- ~rho(phi), identity on
/// variables and constants, homomorphic on every Boolean connective.
///
/// Throws SignatureError when `f` mentions a modality other than boxm/boxm-.
Formula translate_rho(const Formula& f);

}  // namespace conlog
