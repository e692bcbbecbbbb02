#include "conlog/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_map>

#include "conlog/error.hpp"

namespace conlog {

std::string_view kind_name(ConceptKind kind) {
  switch (kind) {
    case ConceptKind::FC: return "FC";
    case ConceptKind::PC: return "PC";
    case ConceptKind::OC: return "OC";
  }
  return "?";
}

ConceptKind parse_kind(std::string_view text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "fc") return ConceptKind::FC;
  if (t == "pc") return ConceptKind::PC;
  if (t == "oc") return ConceptKind::OC;
  throw Error("unknown concept kind '" + std::string(text) + "' (expected fc, pc or oc)");
}

namespace {

SortedSubset op(OperatorKind k, const SortedSubset& s, const FormalContext& c) {
  return apply_operator(k, s, c);
}

}  // namespace

SortedSubset derive_intent(ConceptKind kind, const SortedSubset& extent, const FormalContext& context) {
  switch (kind) {
    case ConceptKind::FC: return op(OperatorKind::plus, extent, context);
    case ConceptKind::PC: return op(OperatorKind::poss, extent, context);
    case ConceptKind::OC: return op(OperatorKind::nec, extent, context);
  }
  throw InvariantViolation("unknown concept kind");
}

SortedSubset derive_extent(ConceptKind kind, const SortedSubset& intent, const FormalContext& context) {
  switch (kind) {
    case ConceptKind::FC: return op(OperatorKind::minus, intent, context);
    case ConceptKind::PC: return op(OperatorKind::nec_inv, intent, context);
    case ConceptKind::OC: return op(OperatorKind::poss_inv, intent, context);
  }
  throw InvariantViolation("unknown concept kind");
}

SortedSubset closure(ConceptKind kind, Side side, const SortedSubset& subset,
                     const FormalContext& context) {
  const Sort want = side == Side::extent ? kObjects : kAttributes;
  if (subset.sort != want) {
    throw SortError(std::string(side == Side::extent ? "extent" : "intent") + " closure expects sort " +
                    default_sort_name(want) + ", got " + default_sort_name(subset.sort));
  }
  if (side == Side::extent) return derive_extent(kind, derive_intent(kind, subset, context), context);
  return derive_intent(kind, derive_extent(kind, subset, context), context);
}

bool is_concept(ConceptKind kind, const SemanticConcept& c, const FormalContext& context) {
  return derive_intent(kind, c.extent, context) == c.intent &&
         derive_extent(kind, c.intent, context) == c.extent;
}

namespace {

/// NextClosure over {0..n-1} for an extensive, monotone, idempotent `cl`;
/// yields the closed sets in lectic order.
std::vector<BitSet> next_closure(std::size_t n, const std::function<BitSet(const BitSet&)>& cl) {
  std::vector<BitSet> out;
  BitSet a = cl(BitSet(n));
  out.push_back(a);
  while (true) {
    bool advanced = false;
    for (std::size_t i = n; i-- > 0;) {
      if (a.test(i)) continue;
      BitSet seed = a.prefix(i);
      seed.set(i);
      BitSet b = cl(seed);
      if (b.equal_below(a, i)) {
        a = std::move(b);
        out.push_back(a);
        advanced = true;
        break;
      }
    }
    if (!advanced) return out;
  }
}

void sort_lectic(std::vector<SemanticConcept>& cs) {
  std::sort(cs.begin(), cs.end(), [](const SemanticConcept& x, const SemanticConcept& y) {
    return BitSet::lectic_less(x.extent.bits, y.extent.bits);
  });
}

}  // namespace

std::vector<SemanticConcept> enumerate_concepts(const FormalContext& context, ConceptKind kind) {
  std::vector<SemanticConcept> out;
  if (kind == ConceptKind::OC) {
    auto intents = next_closure(context.attribute_count(), [&](const BitSet& b) {
      return closure(kind, Side::intent, {kAttributes, b}, context).bits;
    });
    for (auto& b : intents) {
      SortedSubset intent{kAttributes, std::move(b)};
      out.push_back({derive_extent(kind, intent, context), std::move(intent)});
    }
    sort_lectic(out);
    return out;
  }
  auto extents = next_closure(context.object_count(), [&](const BitSet& a) {
    return closure(kind, Side::extent, {kObjects, a}, context).bits;
  });
  for (auto& a : extents) {
    SortedSubset extent{kObjects, std::move(a)};
    SortedSubset intent = derive_intent(kind, extent, context);
    out.push_back({std::move(extent), std::move(intent)});
  }
  return out;
}

std::vector<SemanticConcept> brute_force_concepts(const FormalContext& context, ConceptKind kind) {
  const std::size_t n = context.object_count();
  if (n > 20) throw DimensionError("brute-force scan is limited to 20 objects");
  std::vector<SemanticConcept> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    SortedSubset a{kObjects, BitSet(n)};
    for (std::size_t i = 0; i < n; ++i) a.bits.set(i, (mask >> i) & 1U);
    SortedSubset b = derive_intent(kind, a, context);
    if (derive_extent(kind, b, context) == a) out.push_back({std::move(a), std::move(b)});
  }
  sort_lectic(out);
  return out;
}

std::optional<std::size_t> ConceptLattice::find_extent(const SortedSubset& extent) const {
  for (std::size_t i = 0; i < concepts_.size(); ++i) {
    if (concepts_[i].extent == extent) return i;
  }
  return std::nullopt;
}

ConceptLattice build_lattice(std::vector<SemanticConcept> concepts, ConceptKind kind,
                             const FormalContext& context) {
  ConceptLattice l;
  l.kind_ = kind;
  l.concepts_ = std::move(concepts);
  const std::size_t n = l.concepts_.size();
  if (n == 0) throw LatticeError("empty concept list");
  std::unordered_map<BitSet, std::size_t> by_extent;
  for (std::size_t i = 0; i < n; ++i) {
    if (!by_extent.emplace(l.concepts_[i].extent.bits, i).second) {
      throw LatticeError("two concepts share an extent");
    }
  }
  auto lookup = [&](const BitSet& extent, const char* what, std::size_t a, std::size_t b) {
    auto it = by_extent.find(extent);
    if (it == by_extent.end()) {
      throw LatticeError(std::string(what) + " of concepts " + std::to_string(a) + " and " +
                         std::to_string(b) + " is missing from the list");
    }
    return it->second;
  };
  l.leq_.assign(n, std::vector<bool>(n, false));
  l.meet_.assign(n, std::vector<std::size_t>(n, 0));
  l.join_.assign(n, std::vector<std::size_t>(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const BitSet& x = l.concepts_[a].extent.bits;
      const BitSet& y = l.concepts_[b].extent.bits;
      l.leq_[a][b] = x.is_subset_of(y);
      SortedSubset inter{kObjects, x & y};
      SortedSubset uni{kObjects, x | y};
      if (kind == ConceptKind::OC) {
        l.meet_[a][b] = lookup(closure(kind, Side::extent, inter, context).bits, "meet", a, b);
        l.join_[a][b] = lookup(uni.bits, "join", a, b);
      } else {
        l.meet_[a][b] = lookup(inter.bits, "meet", a, b);
        l.join_[a][b] = lookup(closure(kind, Side::extent, uni, context).bits, "join", a, b);
      }
    }
  }
  bool has_top = false;
  bool has_bottom = false;
  for (std::size_t i = 0; i < n; ++i) {
    bool top = true;
    bool bottom = true;
    for (std::size_t j = 0; j < n; ++j) {
      top = top && l.leq_[j][i];
      bottom = bottom && l.leq_[i][j];
    }
    if (top) {
      l.top_ = i;
      has_top = true;
    }
    if (bottom) {
      l.bottom_ = i;
      has_bottom = true;
    }
  }
  if (!has_top || !has_bottom) throw LatticeError("concept order has no top or no bottom");
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !l.leq_[a][b]) continue;
      bool cover = true;
      for (std::size_t c = 0; c < n && cover; ++c) {
        if (c != a && c != b && l.leq_[a][c] && l.leq_[c][b]) cover = false;
      }
      if (cover) l.covers_.emplace_back(a, b);
    }
  }
  return l;
}

std::string check_lattice_laws(const ConceptLattice& l) {
  const std::size_t n = l.size();
  auto fail = [](const std::string& law, std::size_t a, std::size_t b, std::size_t c) {
    return law + " fails at (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
           std::to_string(c) + ")";
  };
  for (std::size_t a = 0; a < n; ++a) {
    if (l.meet(a, a) != a || l.join(a, a) != a) return fail("idempotence", a, a, a);
    for (std::size_t b = 0; b < n; ++b) {
      if (l.meet(a, b) != l.meet(b, a)) return fail("meet commutativity", a, b, 0);
      if (l.join(a, b) != l.join(b, a)) return fail("join commutativity", a, b, 0);
      if (l.meet(a, l.join(a, b)) != a) return fail("absorption (meet over join)", a, b, 0);
      if (l.join(a, l.meet(a, b)) != a) return fail("absorption (join over meet)", a, b, 0);
      const std::size_t m = l.meet(a, b);
      const std::size_t j = l.join(a, b);
      if (!l.leq(m, a) || !l.leq(m, b) || !l.leq(a, j) || !l.leq(b, j)) return fail("bounds", a, b, 0);
      for (std::size_t c = 0; c < n; ++c) {
        if (l.meet(l.meet(a, b), c) != l.meet(a, l.meet(b, c))) return fail("meet associativity", a, b, c);
        if (l.join(l.join(a, b), c) != l.join(a, l.join(b, c))) return fail("join associativity", a, b, c);
        if (l.leq(c, a) && l.leq(c, b) && !l.leq(c, m)) return fail("greatest lower bound", a, b, c);
        if (l.leq(a, c) && l.leq(b, c) && !l.leq(j, c)) return fail("least upper bound", a, b, c);
      }
    }
  }
  return {};
}

bool YaoReport::passed() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const IsoClause& c) { return c.passed; });
}

namespace {

constexpr std::size_t kSearchLimit = 12;

bool order_respected(const ConceptLattice& src, const ConceptLattice& dst,
                     const std::vector<std::size_t>& map, bool dual, std::string* why) {
  for (std::size_t a = 0; a < src.size(); ++a) {
    for (std::size_t b = 0; b < src.size(); ++b) {
      const bool s = src.leq(a, b);
      const bool t = dual ? dst.leq(map[b], map[a]) : dst.leq(map[a], map[b]);
      if (s != t) {
        if (why) {
          *why = "order not " + std::string(dual ? "reversed" : "preserved") + " at source pair (" +
                 std::to_string(a) + ", " + std::to_string(b) + ")";
        }
        return false;
      }
    }
  }
  return true;
}

bool search(const ConceptLattice& src, const ConceptLattice& dst, bool dual,
            std::vector<std::size_t>& map, std::vector<bool>& used, std::size_t i) {
  if (i == src.size()) return true;
  for (std::size_t t = 0; t < dst.size(); ++t) {
    if (used[t]) continue;
    bool ok = true;
    for (std::size_t a = 0; a < i && ok; ++a) {
      ok = src.leq(a, i) == (dual ? dst.leq(t, map[a]) : dst.leq(map[a], t)) &&
           src.leq(i, a) == (dual ? dst.leq(map[a], t) : dst.leq(t, map[a]));
    }
    if (!ok) continue;
    map[i] = t;
    used[t] = true;
    if (search(src, dst, dual, map, used, i + 1)) return true;
    used[t] = false;
  }
  return false;
}

IsoClause check_clause(std::string name, std::string statement, const ConceptLattice& src,
                       const ConceptLattice& dst, bool dual,
                       const std::function<SemanticConcept(const SemanticConcept&)>& candidate) {
  IsoClause c;
  c.name = std::move(name);
  c.statement = std::move(statement);
  if (src.size() != dst.size()) {
    c.failure = "sizes differ: " + std::to_string(src.size()) + " vs " + std::to_string(dst.size());
    return c;
  }
  std::vector<std::size_t> map(src.size());
  std::vector<bool> used(dst.size(), false);
  bool structural = true;
  std::string why;
  for (std::size_t i = 0; i < src.size() && structural; ++i) {
    const SemanticConcept image = candidate(src.concepts()[i]);
    auto j = dst.find_extent(image.extent);
    if (!j || dst.concepts()[*j].intent != image.intent || used[*j]) {
      structural = false;
      why = "image of concept " + std::to_string(i) + " is not a distinct target concept";
      break;
    }
    map[i] = *j;
    used[*j] = true;
  }
  if (structural && order_respected(src, dst, map, dual, &why)) {
    c.passed = true;
    c.method = "structural";
    c.bijection = std::move(map);
    return c;
  }
  if (src.size() <= kSearchLimit) {
    std::fill(used.begin(), used.end(), false);
    if (search(src, dst, dual, map, used, 0)) {
      c.passed = true;
      c.method = "search";
      c.bijection = std::move(map);
      return c;
    }
    why += "; no order " + std::string(dual ? "anti-" : "") + "isomorphism exists";
  }
  c.failure = why;
  return c;
}

}  // namespace

YaoReport verify_yao_isomorphisms(const FormalContext& context) {
  const FormalContext comp = complement_context(context);
  auto lattice = [](const FormalContext& k, ConceptKind kind) {
    return build_lattice(enumerate_concepts(k, kind), kind, k);
  };
  const ConceptLattice fc = lattice(context, ConceptKind::FC);
  const ConceptLattice pc = lattice(context, ConceptKind::PC);
  const ConceptLattice oc = lattice(context, ConceptKind::OC);
  const ConceptLattice pc_c = lattice(comp, ConceptKind::PC);
  const ConceptLattice oc_c = lattice(comp, ConceptKind::OC);

  YaoReport r;
  r.clauses.push_back(check_clause("a", "FC(K) isomorphic to PC(K^c)", fc, pc_c, false,
                                   [](const SemanticConcept& x) {
                                     return SemanticConcept{x.extent, complement(x.intent)};
                                   }));
  r.clauses.push_back(check_clause("b", "PC(K) dually isomorphic to OC(K)", pc, oc, true,
                                   [](const SemanticConcept& x) {
                                     return SemanticConcept{complement(x.extent), complement(x.intent)};
                                   }));
  r.clauses.push_back(check_clause("c", "FC(K) dually isomorphic to OC(K^c)", fc, oc_c, true,
                                   [](const SemanticConcept& x) {
                                     return SemanticConcept{complement(x.extent), x.intent};
                                   }));
  return r;
}

}  // namespace conlog
