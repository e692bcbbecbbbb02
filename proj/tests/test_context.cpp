#include <gtest/gtest.h>

#include "conlog/context.hpp"
#include "conlog/error.hpp"
#include "conlog/random.hpp"
#include "oracles.hpp"

using namespace conlog;

namespace {

FormalContext k0() { return FormalContext::from_rows({"g1", "g2"}, {"m1", "m2"}, {"X.", "XX"}); }

SortedSubset objs(const FormalContext& k, std::vector<std::string> n) { return k.subset(kObjects, n); }
SortedSubset atts(const FormalContext& k, std::vector<std::string> n) { return k.subset(kAttributes, n); }

constexpr OperatorKind kAllOps[] = {OperatorKind::plus, OperatorKind::minus, OperatorKind::poss,
                                    OperatorKind::nec, OperatorKind::poss_inv, OperatorKind::nec_inv};

}  // namespace

TEST(BitSet, LecticOrderAndPrefix) {
  BitSet a(5), b(5);
  a.set(1);
  b.set(0);
  EXPECT_TRUE(BitSet::lectic_less(a, b));
  EXPECT_FALSE(BitSet::lectic_less(b, a));
  EXPECT_FALSE(BitSet::lectic_less(a, a));
  BitSet c(70);
  c.set(3).set(65);
  EXPECT_EQ(c.count(), 2u);
  EXPECT_EQ(c.prefix(10).count(), 1u);
  EXPECT_TRUE(c.equal_below(c.prefix(66), 66));
  EXPECT_FALSE(c.equal_below(c.prefix(60), 66));
  EXPECT_EQ(c.find_first(), 3u);
  EXPECT_EQ(c.find_next(4), 65u);
  EXPECT_TRUE((~c).all() == false);
  EXPECT_EQ((~c).count(), 68u);
}

TEST(Operators, K0Examples) {
  const auto k = k0();
  EXPECT_EQ(apply_operator(OperatorKind::plus, k.empty_set(kObjects), k), atts(k, {"m1", "m2"}));
  EXPECT_EQ(apply_operator(OperatorKind::plus, objs(k, {"g2"}), k), atts(k, {"m1", "m2"}));
  EXPECT_EQ(apply_operator(OperatorKind::poss, objs(k, {"g1"}), k), atts(k, {"m1"}));
  EXPECT_EQ(apply_operator(OperatorKind::nec, objs(k, {"g1"}), k), atts(k, {}));
  EXPECT_EQ(apply_operator(OperatorKind::nec_inv, atts(k, {"m1"}), k), objs(k, {"g1"}));
}

TEST(Operators, SortAndSizeErrors) {
  const auto k = k0();
  EXPECT_THROW(apply_operator(OperatorKind::plus, k.empty_set(kAttributes), k), SortError);
  EXPECT_THROW(apply_operator(OperatorKind::minus, k.empty_set(kObjects), k), SortError);
  EXPECT_THROW(apply_operator(OperatorKind::plus, SortedSubset{kObjects, BitSet(3)}, k), DimensionError);
  try {
    apply_operator(OperatorKind::nec, k.empty_set(kAttributes), k);
    FAIL();
  } catch (const SortError& e) {
    EXPECT_NE(std::string(e.what()).find("s1"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("s2"), std::string::npos);
  }
}

TEST(Context, ConstructionChecks) {
  EXPECT_THROW(FormalContext::from_rows({"g", "g"}, {"m"}, {"X", "."}), Error);
  EXPECT_THROW(FormalContext::from_rows({"g"}, {"m", "m"}, {"X."}), Error);
  EXPECT_THROW(FormalContext::from_rows({}, {"m"}, {}), DimensionError);
  EXPECT_THROW(FormalContext::from_rows({"g"}, {}, {""}), DimensionError);
  EXPECT_THROW(FormalContext::from_rows({"g"}, {"m"}, {"XX"}), DimensionError);
  // The sorts are disjoint namespaces.
  EXPECT_NO_THROW(FormalContext::from_rows({"x"}, {"x"}, {"X"}));
  EXPECT_THROW(k0().subset(kObjects, {"m1"}), Error);
}

TEST(Context, Complement) {
  const auto k = k0();
  const auto c = complement_context(k);
  EXPECT_TRUE(c.incident(0, 1));
  EXPECT_FALSE(c.incident(0, 0));
  EXPECT_FALSE(c.incident(1, 0));
  EXPECT_FALSE(c.incident(1, 1));
  EXPECT_EQ(complement_context(c), k);
  const auto full = FormalContext::from_rows({"a", "b"}, {"x", "y", "z"}, {"XXX", "XXX"});
  const auto empty = complement_context(full);
  for (std::size_t g = 0; g < 2; ++g) {
    for (std::size_t m = 0; m < 3; ++m) EXPECT_FALSE(empty.incident(g, m));
  }
}

TEST(Context, DualityCheck) {
  const auto k = k0();
  EXPECT_TRUE(duality_check(OperatorKind::nec, objs(k, {"g1"}), k));
  EXPECT_TRUE(duality_check(OperatorKind::nec_inv, k.empty_set(kAttributes), k));
  Rng rng(11);
  for (int t = 0; t < 5; ++t) {
    const auto r = random_context(rng, 5, 5, 5, 5);
    for (const auto& s : oracle::subsets(5)) {
      for (OperatorKind op : kAllOps) {
        const Sort in = input_sort(op);
        EXPECT_TRUE(duality_check(op, oracle::from_set(in, 5, s), r));
      }
    }
  }
}

TEST(Context, FormatSubset) {
  const auto k = k0();
  EXPECT_EQ(format_subset(objs(k, {"g1", "g2"}), k), "{g1, g2}");
  EXPECT_EQ(format_subset(k.empty_set(kAttributes), k), "{}");
}

// Every operator agrees with the definitional oracle on every subset.
TEST(OperatorProperties, MatchOracleExhaustively) {
  Rng rng(2024);
  for (int t = 0; t < 60; ++t) {
    const auto k = random_context(rng, 1, 6, 1, 6);
    const oracle::Ctx c(k);
    for (OperatorKind op : kAllOps) {
      const Sort in = input_sort(op);
      const std::size_t n = k.carrier_size(in);
      for (const auto& s : oracle::subsets(n)) {
        const auto got = apply_operator(op, oracle::from_set(in, n, s), k);
        ASSERT_EQ(got.sort, output_sort(op));
        ASSERT_EQ(oracle::to_set(got), oracle::apply(op, c, s)) << operator_name(op);
      }
    }
  }
}

TEST(OperatorProperties, GaloisAdjunctionAndClosures) {
  Rng rng(7);
  for (int t = 0; t < 25; ++t) {
    const auto k = random_context(rng, 1, 5, 1, 5);
    const std::size_t g = k.object_count();
    const std::size_t m = k.attribute_count();
    auto A = [&](const oracle::Set& s) { return oracle::from_set(kObjects, g, s); };
    auto B = [&](const oracle::Set& s) { return oracle::from_set(kAttributes, m, s); };
    auto op = [&](OperatorKind o, const SortedSubset& s) { return apply_operator(o, s, k); };
    auto sub = [](const SortedSubset& x, const SortedSubset& y) { return x.bits.is_subset_of(y.bits); };
    for (const auto& a1 : oracle::subsets(g)) {
      const auto a = A(a1);
      EXPECT_TRUE(sub(a, op(OperatorKind::minus, op(OperatorKind::plus, a))));
      const auto ab = op(OperatorKind::minus, op(OperatorKind::plus, a));
      EXPECT_EQ(op(OperatorKind::minus, op(OperatorKind::plus, ab)), ab);
      const auto pc = op(OperatorKind::nec_inv, op(OperatorKind::poss, a));
      EXPECT_EQ(op(OperatorKind::nec_inv, op(OperatorKind::poss, pc)), pc);
      const auto oc = op(OperatorKind::poss_inv, op(OperatorKind::nec, a));
      EXPECT_EQ(op(OperatorKind::poss_inv, op(OperatorKind::nec, oc)), oc);
      for (const auto& a2 : oracle::subsets(g)) {
        const auto b = A(a2);
        if (sub(a, b)) EXPECT_TRUE(sub(op(OperatorKind::plus, b), op(OperatorKind::plus, a)));
      }
      for (const auto& b1 : oracle::subsets(m)) {
        const auto b = B(b1);
        EXPECT_EQ(sub(op(OperatorKind::poss, a), b), sub(a, op(OperatorKind::nec_inv, b)));
        EXPECT_EQ(sub(b, op(OperatorKind::nec, a)), sub(op(OperatorKind::poss_inv, b), a));
      }
    }
    for (const auto& b1 : oracle::subsets(m)) {
      const auto b = B(b1);
      EXPECT_TRUE(sub(b, op(OperatorKind::plus, op(OperatorKind::minus, b))));
    }
  }
}
