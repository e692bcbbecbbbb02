#include "conlog/logical_concepts.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "conlog/error.hpp"
#include "conlog/syntax.hpp"
#include "conlog/translate.hpp"

namespace conlog {

using F = Formula;

std::string_view class_name(FormulaClass c) {
  switch (c) {
    case FormulaClass::PC_ext: return "PC_ext";
    case FormulaClass::PC_int: return "PC_int";
    case FormulaClass::OC_ext: return "OC_ext";
    case FormulaClass::OC_int: return "OC_int";
    case FormulaClass::FC_ext: return "FC_ext";
    case FormulaClass::FC_int: return "FC_int";
  }
  return "?";
}

FormulaClass parse_class(std::string_view text) {
  std::string t;
  for (char c : text) t += c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (auto c : {FormulaClass::PC_ext, FormulaClass::PC_int, FormulaClass::OC_ext, FormulaClass::OC_int,
                 FormulaClass::FC_ext, FormulaClass::FC_int}) {
    std::string n(class_name(c));
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (n == t) return c;
  }
  throw Error("unknown formula class '" + std::string(text) + "' (expected pc_ext, pc_int, oc_ext, oc_int, fc_ext or fc_int)");
}

FormulaClass class_of(ConceptKind kind, Side side) {
  const bool ext = side == Side::extent;
  switch (kind) {
    case ConceptKind::PC: return ext ? FormulaClass::PC_ext : FormulaClass::PC_int;
    case ConceptKind::OC: return ext ? FormulaClass::OC_ext : FormulaClass::OC_int;
    case ConceptKind::FC: return ext ? FormulaClass::FC_ext : FormulaClass::FC_int;
  }
  throw InvariantViolation("unknown concept kind");
}

Sort class_sort(FormulaClass c) {
  switch (c) {
    case FormulaClass::PC_ext:
    case FormulaClass::OC_ext:
    case FormulaClass::FC_ext: return kObjects;
    default: return kAttributes;
  }
}

namespace {

void expect_sort(const F& f, Sort s, std::string_view what) {
  if (f.sort() != s) {
    throw SortError(std::string(what) + " must have sort " + default_sort_name(s) + ", got " +
                    default_sort_name(f.sort()) + ": " + to_string(f));
  }
}

/// Forward (extent to intent) and backward modalities of a kind.
F forward(ConceptKind kind, F f) {
  switch (kind) {
    case ConceptKind::PC: return ts::dia(std::move(f));
    case ConceptKind::OC: return ts::box(std::move(f));
    case ConceptKind::FC: return ts::win(std::move(f));
  }
  throw InvariantViolation("unknown concept kind");
}

F backward(ConceptKind kind, F f) {
  switch (kind) {
    case ConceptKind::PC: return ts::box_inv(std::move(f));
    case ConceptKind::OC: return ts::dia_inv(std::move(f));
    case ConceptKind::FC: return ts::win_inv(std::move(f));
  }
  throw InvariantViolation("unknown concept kind");
}

ConceptKind kind_of(FormulaClass c) {
  switch (c) {
    case FormulaClass::PC_ext:
    case FormulaClass::PC_int: return ConceptKind::PC;
    case FormulaClass::OC_ext:
    case FormulaClass::OC_int: return ConceptKind::OC;
    default: return ConceptKind::FC;
  }
}

}  // namespace

F class_condition(const F& f, FormulaClass c) {
  expect_sort(f, class_sort(c), class_name(c));
  const ConceptKind k = kind_of(c);
  if (class_sort(c) == kObjects) return F::iff(backward(k, forward(k, f)), f);
  return F::iff(forward(k, backward(k, f)), f);
}

CheckResult check_member_class(const F& f, FormulaClass c, const SortedFrame& frame, std::uint64_t budget) {
  return check_frame_validity(frame, class_condition(f, c), budget);
}

bool member_class(const F& f, FormulaClass c, const SortedFrame& frame, std::uint64_t budget) {
  return check_member_class(f, c, frame, budget).holds;
}

std::vector<F> pair_conditions(const LogicalPair& pair, ConceptKind kind) {
  expect_sort(pair.extent, kObjects, "extent formula");
  expect_sort(pair.intent, kAttributes, "intent formula");
  return {class_condition(pair.extent, class_of(kind, Side::extent)),
          class_condition(pair.intent, class_of(kind, Side::intent)),
          F::iff(pair.extent, backward(kind, pair.intent)),
          F::iff(forward(kind, pair.extent), pair.intent)};
}

PairCheck check_member_pair(const LogicalPair& pair, ConceptKind kind, const SortedFrame& frame,
                            std::uint64_t budget) {
  PairCheck out;
  for (const F& cond : pair_conditions(pair, kind)) {
    CheckResult r = check_frame_validity(frame, cond, budget);
    if (!r.holds) {
      out.holds = false;
      out.failed_condition = cond;
      out.counterexample = std::move(r.counterexample);
      return out;
    }
  }
  return out;
}

bool member_pair(const LogicalPair& pair, ConceptKind kind, const SortedFrame& frame, std::uint64_t budget) {
  return check_member_pair(pair, kind, frame, budget).holds;
}

LogicalPair generate_pair(const F& seed, ConceptKind kind) {
  expect_sort(seed, kObjects, "seed");
  F intent = forward(kind, seed);
  return {backward(kind, intent), intent};
}

std::string_view direction_name(PairDirection d) {
  switch (d) {
    case PairDirection::pc_to_oc: return "pc-oc";
    case PairDirection::fc_to_pc_of_complement: return "fc-pc";
    case PairDirection::fc_to_oc_of_complement: return "fc-oc";
  }
  return "?";
}

PairDirection parse_direction(std::string_view text) {
  std::string t;
  for (char c : text) t += c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (auto d : {PairDirection::pc_to_oc, PairDirection::fc_to_pc_of_complement,
                 PairDirection::fc_to_oc_of_complement}) {
    if (t == direction_name(d)) return d;
  }
  throw Error("unknown direction '" + std::string(text) + "' (expected pc-oc, fc-pc or fc-oc)");
}

ConceptKind direction_source(PairDirection d) {
  return d == PairDirection::pc_to_oc ? ConceptKind::PC : ConceptKind::FC;
}

ConceptKind direction_target(PairDirection d) {
  return d == PairDirection::fc_to_pc_of_complement ? ConceptKind::PC : ConceptKind::OC;
}

bool direction_complements(PairDirection d) { return d != PairDirection::pc_to_oc; }

LogicalPair transform_pair(const LogicalPair& pair, PairDirection d) {
  expect_sort(pair.extent, kObjects, "extent formula");
  expect_sort(pair.intent, kAttributes, "intent formula");
  switch (d) {
    case PairDirection::pc_to_oc: return {F::neg(pair.extent), F::neg(pair.intent)};
    case PairDirection::fc_to_pc_of_complement:
      return {translate_rho(pair.extent), F::neg(translate_rho(pair.intent))};
    case PairDirection::fc_to_oc_of_complement:
      return {F::neg(translate_rho(pair.extent)), translate_rho(pair.intent)};
  }
  throw InvariantViolation("unknown direction");
}

namespace {

bool equivalent(const F& a, const F& b, const SortedFrame& frame, std::uint64_t budget) {
  return a == b || frame_valid(frame, F::iff(a, b), budget);
}

/// Both components equivalent; no consistency requirement between them.
bool same_pair(const LogicalPair& a, const LogicalPair& b, const SortedFrame& frame, std::uint64_t budget) {
  return equivalent(a.extent, b.extent, frame, budget) && equivalent(a.intent, b.intent, frame, budget);
}

std::string show(const LogicalPair& p) {
  return "(" + to_string(p.extent) + ", " + to_string(p.intent) + ")";
}

}  // namespace

bool equiv_pairs(const LogicalPair& a, const LogicalPair& b, const SortedFrame& frame, std::uint64_t budget) {
  const bool ext = equivalent(a.extent, b.extent, frame, budget);
  const bool in = equivalent(a.intent, b.intent, frame, budget);
  if (ext != in) {
    throw InvariantViolation("extent and intent equivalence disagree for " + show(a) + " and " + show(b) +
                             ": extents " + (ext ? "" : "not ") + "equivalent, intents " + (in ? "" : "not ") +
                             "equivalent");
  }
  return ext;
}

LogicalPair quotient_meet(const LogicalPair& a, const LogicalPair& b, ConceptKind kind, QuotientVariant variant) {
  if (kind == ConceptKind::OC && variant == QuotientVariant::corrected) {
    F in = F::conj(a.intent, b.intent);
    return {ts::dia_inv(in), in};
  }
  F ext = F::conj(a.extent, b.extent);
  return {ext, forward(kind, ext)};
}

LogicalPair quotient_join(const LogicalPair& a, const LogicalPair& b, ConceptKind kind, QuotientVariant variant) {
  if (kind == ConceptKind::FC || variant == QuotientVariant::fc_pattern) {
    F in = F::conj(a.intent, b.intent);
    return {backward(kind, in), in};
  }
  if (kind == ConceptKind::PC) {
    F in = F::disj(a.intent, b.intent);
    return {ts::box_inv(in), in};
  }
  F ext = F::disj(a.extent, b.extent);
  return {ext, ts::box(ext)};
}

bool LawReport::passed() const {
  return std::all_of(laws.begin(), laws.end(), [](const LawCheck& l) { return l.passed; });
}

const LawCheck* LawReport::find(std::string_view law) const {
  for (const auto& l : laws) {
    if (l.law == law) return &l;
  }
  return nullptr;
}

namespace {

class LawRecorder {
 public:
  explicit LawRecorder(LawReport& report) : report_(report) {}

  void record(const std::string& law, bool ok, const std::function<std::string()>& witness) {
    LawCheck* entry = nullptr;
    for (auto& l : report_.laws) {
      if (l.law == law) entry = &l;
    }
    if (!entry) {
      report_.laws.push_back({law, true, 0, {}});
      entry = &report_.laws.back();
    }
    ++entry->instances;
    if (!ok && entry->passed) {
      entry->passed = false;
      entry->witness = witness();
    }
  }

 private:
  LawReport& report_;
};

}  // namespace

LawReport verify_quotient_lattice(const std::vector<LogicalPair>& pairs, ConceptKind kind, const SortedFrame& frame,
                                  std::uint64_t budget, QuotientVariant variant) {
  LawReport report;
  LawRecorder rec(report);
  auto meet = [&](const LogicalPair& a, const LogicalPair& b) { return quotient_meet(a, b, kind, variant); };
  auto join = [&](const LogicalPair& a, const LogicalPair& b) { return quotient_join(a, b, kind, variant); };
  auto same = [&](const LogicalPair& a, const LogicalPair& b) { return same_pair(a, b, frame, budget); };

  for (const auto& a : pairs) {
    rec.record("membership", member_pair(a, kind, frame, budget), [&] { return show(a) + " is not a member"; });
  }

  const std::vector<std::pair<std::string, std::function<LogicalPair(const LogicalPair&)>>> reps = {
      {"doubled", [](const LogicalPair& p) { return LogicalPair{F::conj(p.extent, p.extent), F::conj(p.intent, p.intent)}; }},
      {"from extent", [&](const LogicalPair& p) { return LogicalPair{p.extent, forward(kind, p.extent)}; }},
      {"from intent", [&](const LogicalPair& p) { return LogicalPair{backward(kind, p.intent), p.intent}; }},
  };

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& a = pairs[i];
    rec.record("idempotence", same(meet(a, a), a) && same(join(a, a), a),
               [&] { return "a = " + show(a); });
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      const auto& b = pairs[j];
      const LogicalPair m = meet(a, b);
      const LogicalPair jn = join(a, b);
      rec.record("closure", member_pair(m, kind, frame, budget), [&] { return "meet " + show(m) + " is not a member"; });
      rec.record("closure", member_pair(jn, kind, frame, budget), [&] { return "join " + show(jn) + " is not a member"; });
      for (const auto& [name, rep] : reps) {
        const LogicalPair ra = rep(a);
        const LogicalPair rb = rep(b);
        rec.record("well-definedness", same(meet(ra, rb), m) && same(join(ra, rb), jn), [&] {
          return name + " representatives of a = " + show(a) + ", b = " + show(b) + " change the result";
        });
      }
      rec.record("commutativity", same(m, meet(b, a)) && same(jn, join(b, a)),
                 [&] { return "a = " + show(a) + ", b = " + show(b); });
      rec.record("absorption", same(meet(a, jn), a), [&] { return "meet over join at a = " + show(a) + ", b = " + show(b); });
      rec.record("absorption", same(join(a, m), a), [&] { return "join over meet at a = " + show(a) + ", b = " + show(b); });
      for (const auto& c : pairs) {
        rec.record("associativity", same(meet(m, c), meet(a, meet(b, c))) && same(join(jn, c), join(a, join(b, c))),
                   [&] { return "a = " + show(a) + ", b = " + show(b) + ", c = " + show(c); });
      }
    }
  }
  return report;
}

LawReport verify_isomorphisms(const std::vector<LogicalPair>& pairs_fc, const FormalContext& context,
                              std::uint64_t budget, QuotientVariant variant) {
  const SortedFrame f_k = context_to_frame(context);
  const SortedFrame f_c = context_to_frame(complement_context(context));
  LawReport report;
  LawRecorder rec(report);
  auto same = [&](const LogicalPair& a, const LogicalPair& b, const SortedFrame& fr) {
    return same_pair(a, b, fr, budget);
  };
  auto h = [](const LogicalPair& p) { return transform_pair(p, PairDirection::fc_to_pc_of_complement); };
  auto f = [](const LogicalPair& p) { return transform_pair(p, PairDirection::pc_to_oc); };
  auto g = [](const LogicalPair& p) { return transform_pair(p, PairDirection::fc_to_oc_of_complement); };
  auto meet = [&](const LogicalPair& a, const LogicalPair& b, ConceptKind k) { return quotient_meet(a, b, k, variant); };
  auto join = [&](const LogicalPair& a, const LogicalPair& b, ConceptKind k) { return quotient_join(a, b, k, variant); };
  auto both = [](const LogicalPair& a, const LogicalPair& b) { return "a = " + show(a) + ", b = " + show(b); };

  std::vector<LogicalPair> pc_family;
  for (const auto& a : pairs_fc) pc_family.push_back(h(a));

  // a: h from FC on F to PC on Fc.
  for (std::size_t i = 0; i < pairs_fc.size(); ++i) {
    const auto& a = pairs_fc[i];
    rec.record("a: membership", member_pair(pc_family[i], ConceptKind::PC, f_c, budget),
               [&] { return "h(" + show(a) + ") = " + show(pc_family[i]) + " is not PC on the complement"; });
    for (std::size_t j = 0; j < pairs_fc.size(); ++j) {
      const auto& b = pairs_fc[j];
      rec.record("a: equivalence", same(a, b, f_k) == same(pc_family[i], pc_family[j], f_c), [&] { return both(a, b); });
      rec.record("a: meet", same(h(meet(a, b, ConceptKind::FC)), meet(pc_family[i], pc_family[j], ConceptKind::PC), f_c),
                 [&] { return both(a, b); });
      rec.record("a: join", same(h(join(a, b, ConceptKind::FC)), join(pc_family[i], pc_family[j], ConceptKind::PC), f_c),
                 [&] { return both(a, b); });
    }
  }

  // b: f from PC on Fc to OC on Fc, order reversing.
  for (std::size_t i = 0; i < pc_family.size(); ++i) {
    const auto& x = pc_family[i];
    rec.record("b: membership", member_pair(f(x), ConceptKind::OC, f_c, budget),
               [&] { return "f(" + show(x) + ") is not OC"; });
    for (std::size_t j = 0; j < pc_family.size(); ++j) {
      const auto& y = pc_family[j];
      rec.record("b: equivalence", same(x, y, f_c) == same(f(x), f(y), f_c), [&] { return both(x, y); });
      rec.record("b: meet", same(f(meet(x, y, ConceptKind::PC)), join(f(x), f(y), ConceptKind::OC), f_c),
                 [&] { return both(x, y); });
      rec.record("b: join", same(f(join(x, y, ConceptKind::PC)), meet(f(x), f(y), ConceptKind::OC), f_c),
                 [&] { return both(x, y); });
    }
  }

  // c: the composite, FC on F to OC on Fc, order reversing.
  for (const auto& a : pairs_fc) {
    rec.record("c: membership", member_pair(g(a), ConceptKind::OC, f_c, budget),
               [&] { return "g(" + show(a) + ") is not OC on the complement"; });
    rec.record("c: composite", same(g(a), f(h(a)), f_c), [&] { return "a = " + show(a); });
    for (const auto& b : pairs_fc) {
      rec.record("c: equivalence", same(a, b, f_k) == same(g(a), g(b), f_c), [&] { return both(a, b); });
      rec.record("c: meet", same(g(meet(a, b, ConceptKind::FC)), join(g(a), g(b), ConceptKind::OC), f_c),
                 [&] { return both(a, b); });
      rec.record("c: join", same(g(join(a, b, ConceptKind::FC)), meet(g(a), g(b), ConceptKind::OC), f_c),
                 [&] { return both(a, b); });
    }
  }
  return report;
}

}  // namespace conlog
