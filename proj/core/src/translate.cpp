#include "conlog/translate.hpp"

#include "conlog/error.hpp"

namespace conlog {

Formula translate_rho(const Formula& f) {
  switch (f.op()) {
    case Connective::var:
    case Connective::bot:
    case Connective::top:
      return f;
    case Connective::neg: return Formula::neg(translate_rho(f.child(0)));
    case Connective::conj: return Formula::conj(translate_rho(f.child(0)), translate_rho(f.child(1)));
    case Connective::disj: return Formula::disj(translate_rho(f.child(0)), translate_rho(f.child(1)));
    case Connective::imp: return Formula::imp(translate_rho(f.child(0)), translate_rho(f.child(1)));
    case Connective::iff: return Formula::iff(translate_rho(f.child(0)), translate_rho(f.child(1)));
    case Connective::modal:
    case Connective::dual:
      break;
  }
  const Modality& m = *f.modality();
  const bool window_sig = Signature::window().contains(m);
  if (f.op() == Connective::modal && window_sig && m.name == names::kWin) {
    return ts::box(Formula::neg(translate_rho(f.child(0))));
  }
  if (f.op() == Connective::modal && window_sig && m.name == names::kWinInv) {
    return ts::box_inv(Formula::neg(translate_rho(f.child(0))));
  }
  throw SignatureError("translation is defined on window formulas only; found '" + m.name + "'");
}

}  // namespace conlog
