#include <gtest/gtest.h>

#include <algorithm>
#include <tuple>

#include "conlog/error.hpp"
#include "conlog/io.hpp"
#include "conlog/lattice.hpp"
#include "conlog/random.hpp"
#include "oracles.hpp"

using namespace conlog;

namespace {

FormalContext k0() { return FormalContext::from_rows({"g1", "g2"}, {"m1", "m2"}, {"X.", "XX"}); }

constexpr ConceptKind kKinds[] = {ConceptKind::FC, ConceptKind::PC, ConceptKind::OC};

std::vector<oracle::Pair> as_pairs(const std::vector<SemanticConcept>& cs) {
  std::vector<oracle::Pair> out;
  for (const auto& c : cs) out.push_back({oracle::to_set(c.extent), oracle::to_set(c.intent)});
  return out;
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Concepts, K0Lists) {
  const auto k = k0();
  using P = oracle::Pair;
  EXPECT_EQ(as_pairs(enumerate_concepts(k, ConceptKind::FC)),
            (std::vector<P>{{{1}, {0, 1}}, {{0, 1}, {0}}}));
  EXPECT_EQ(as_pairs(enumerate_concepts(k, ConceptKind::PC)),
            (std::vector<P>{{{}, {}}, {{0}, {0}}, {{0, 1}, {0, 1}}}));
  EXPECT_EQ(as_pairs(enumerate_concepts(k, ConceptKind::OC)),
            (std::vector<P>{{{}, {}}, {{1}, {1}}, {{0, 1}, {0, 1}}}));
  EXPECT_EQ(kind_name(parse_kind("oc")), "OC");
  EXPECT_EQ(parse_kind("Pc"), ConceptKind::PC);
  EXPECT_THROW(parse_kind("xc"), Error);
}

// NextClosure, the brute-force scan and the definitional oracle agree, in
// lectic order, for every kind.
TEST(Concepts, EnumerationMatchesOracles) {
  Rng rng(101);
  for (int t = 0; t < 200; ++t) {
    const auto k = random_context(rng, 1, 6, 1, 6, static_cast<unsigned>(rng.between(10, 90)));
    const oracle::Ctx c(k);
    for (ConceptKind kind : kKinds) {
      const auto fast = enumerate_concepts(k, kind);
      ASSERT_EQ(fast, brute_force_concepts(k, kind)) << kind_name(kind);
      ASSERT_EQ(as_pairs(fast), oracle::concepts(c, kind)) << kind_name(kind);
      for (std::size_t i = 1; i < fast.size(); ++i) {
        ASSERT_TRUE(BitSet::lectic_less(fast[i - 1].extent.bits, fast[i].extent.bits));
      }
      for (const auto& x : fast) ASSERT_TRUE(is_concept(kind, x, k));
    }
  }
}

TEST(Concepts, BruteForceLimit) {
  std::vector<std::string> g;
  std::vector<std::string> rows;
  for (int i = 0; i < 21; ++i) {
    g.push_back("g" + std::to_string(i));
    rows.push_back(i % 2 ? "X" : ".");
  }
  const auto k = FormalContext::from_rows(g, {"m"}, rows);
  EXPECT_THROW(brute_force_concepts(k, ConceptKind::FC), DimensionError);
  EXPECT_EQ(enumerate_concepts(k, ConceptKind::FC).size(), 2u);
}

// Extensive (closure) or contractive (kernel), monotone, idempotent.
TEST(Closures, OperatorLaws) {
  Rng rng(55);
  for (int t = 0; t < 40; ++t) {
    const auto k = random_context(rng, 1, 5, 1, 5);
    for (ConceptKind kind : kKinds) {
      for (Side side : {Side::extent, Side::intent}) {
        const Sort s = side == Side::extent ? kObjects : kAttributes;
        const std::size_t n = k.carrier_size(s);
        const bool kernel = (kind == ConceptKind::PC && side == Side::intent) ||
                            (kind == ConceptKind::OC && side == Side::extent);
        const auto all = oracle::subsets(n);
        for (const auto& a : all) {
          const auto x = oracle::from_set(s, n, a);
          const auto cx = closure(kind, side, x, k);
          if (kernel) {
            ASSERT_TRUE(cx.bits.is_subset_of(x.bits));
          } else {
            ASSERT_TRUE(x.bits.is_subset_of(cx.bits));
          }
          ASSERT_EQ(closure(kind, side, cx, k), cx);
          for (const auto& b : all) {
            const auto y = oracle::from_set(s, n, b);
            if (x.bits.is_subset_of(y.bits)) ASSERT_TRUE(cx.bits.is_subset_of(closure(kind, side, y, k).bits));
          }
        }
      }
    }
  }
  const auto k = k0();
  EXPECT_THROW(closure(ConceptKind::FC, Side::extent, k.empty_set(kAttributes), k), SortError);
}

TEST(Lattice, LawsHoldOnRandomContexts) {
  Rng rng(31);
  for (int t = 0; t < 60; ++t) {
    const auto k = random_context(rng, 1, 5, 1, 5);
    for (ConceptKind kind : kKinds) {
      const ConceptLattice l = build_lattice(enumerate_concepts(k, kind), kind, k);
      ASSERT_EQ(check_lattice_laws(l), "") << kind_name(kind);
      // Covers are exactly the strict pairs with nothing in between.
      for (std::size_t a = 0; a < l.size(); ++a) {
        for (std::size_t b = 0; b < l.size(); ++b) {
          bool cover = a != b && l.leq(a, b);
          for (std::size_t c = 0; cover && c < l.size(); ++c) {
            cover = !(c != a && c != b && l.leq(a, c) && l.leq(c, b));
          }
          const bool listed = std::find(l.covers().begin(), l.covers().end(), std::make_pair(a, b)) != l.covers().end();
          ASSERT_EQ(cover, listed);
        }
      }
    }
  }
}

TEST(Lattice, MissingConceptIsRejected) {
  const auto k = FormalContext::from_rows({"g1", "g2", "g3"}, {"m1", "m2", "m3"}, {"X..", ".X.", "..X"});
  auto cs = enumerate_concepts(k, ConceptKind::FC);
  ASSERT_EQ(cs.size(), 5u);
  const ConceptLattice full = build_lattice(cs, ConceptKind::FC, k);
  cs.erase(cs.begin() + static_cast<long>(full.top()));
  EXPECT_THROW(build_lattice(cs, ConceptKind::FC, k), LatticeError);
  auto dup = enumerate_concepts(k, ConceptKind::FC);
  dup.push_back(dup.front());
  EXPECT_THROW(build_lattice(dup, ConceptKind::FC, k), LatticeError);
}

TEST(Lattice, DotExport) {
  const auto k = k0();
  struct Case {
    ConceptKind kind;
    std::size_t nodes;
    std::size_t edges;
  };
  for (const Case& c : {Case{ConceptKind::FC, 2, 1}, Case{ConceptKind::PC, 3, 2}, Case{ConceptKind::OC, 3, 2}}) {
    const std::string dot = export_dot(build_lattice(enumerate_concepts(k, c.kind), c.kind, k), k);
    EXPECT_EQ(count(dot, "[label="), c.nodes);
    EXPECT_EQ(count(dot, " -> "), c.edges);
    EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  }
  // 1x1 empty: (0, {m}) below ({g}, 0). 1x1 full: one concept.
  for (const auto& [row, nodes, edges] : {std::tuple{".", 2u, 1u}, std::tuple{"X", 1u, 0u}}) {
    const auto single = FormalContext::from_rows({"g"}, {"m"}, {row});
    const std::string dot =
        export_dot(build_lattice(enumerate_concepts(single, ConceptKind::FC), ConceptKind::FC, single), single);
    EXPECT_EQ(count(dot, "[label="), nodes) << row;
    EXPECT_EQ(count(dot, " -> "), edges) << row;
  }
}

// The three complement isomorphisms, with sizes cross-checked by the oracle.
TEST(Yao, IsomorphismsOnRandomContexts) {
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    const auto k = random_context(rng, 1, 5, 1, 5);
    const YaoReport r = verify_yao_isomorphisms(k);
    ASSERT_TRUE(r.passed());
    ASSERT_EQ(r.clauses.size(), 3u);
    for (const auto& c : r.clauses) {
      EXPECT_EQ(c.method, "structural") << c.name;
      EXPECT_TRUE(c.failure.empty());
    }
    const oracle::Ctx c(k);
    const oracle::Ctx cc(complement_context(k));
    const std::size_t fc = oracle::concepts(c, ConceptKind::FC).size();
    EXPECT_EQ(fc, oracle::concepts(cc, ConceptKind::PC).size());
    EXPECT_EQ(oracle::concepts(c, ConceptKind::PC).size(), oracle::concepts(c, ConceptKind::OC).size());
    EXPECT_EQ(fc, oracle::concepts(cc, ConceptKind::OC).size());
  }
}

// Clause (a) maps each FC concept (A, B) of K to (A, M\B) in PC(K^c).
TEST(Yao, StructuralMapIsTheComplementOfTheIntent) {
  Rng rng(19);
  for (int t = 0; t < 50; ++t) {
    const auto k = random_context(rng, 1, 5, 1, 5);
    const auto kc = complement_context(k);
    const oracle::Ctx cc(kc);
    const auto pcs = oracle::concepts(cc, ConceptKind::PC);
    for (const auto& fc : enumerate_concepts(k, ConceptKind::FC)) {
      oracle::Pair img{oracle::to_set(fc.extent), oracle::to_set(SortedSubset{kAttributes, ~fc.intent.bits})};
      EXPECT_NE(std::find(pcs.begin(), pcs.end(), img), pcs.end());
    }
  }
}
