#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "oracle.hpp"
#include "oreext/gallery.hpp"
#include "oreext/rings_modules.hpp"

using namespace oreext;

namespace {

struct Naive {
  bool associative = true, left_dist = true, right_dist = true, boolean = true;
  std::vector<Elem> left_ids, right_ids;
};

Naive naive_properties(const FiniteRing& R) {
  const auto& G = R.group();
  const Elem n = static_cast<Elem>(R.order());
  Naive out;
  for (Elem a = 0; a < n; ++a) {
    out.boolean = out.boolean && R.mul(a, a) == a;
    bool l = true, r = true;
    for (Elem b = 0; b < n; ++b) {
      l = l && R.mul(a, b) == b;
      r = r && R.mul(b, a) == b;
      for (Elem c = 0; c < n; ++c) {
        out.associative = out.associative && R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c));
        out.left_dist = out.left_dist && R.mul(a, G.add(b, c)) == G.add(R.mul(a, b), R.mul(a, c));
        out.right_dist = out.right_dist && R.mul(G.add(a, b), c) == G.add(R.mul(a, c), R.mul(b, c));
      }
    }
    if (l) out.left_ids.push_back(a);
    if (r) out.right_ids.push_back(a);
  }
  return out;
}

const RingItem& ring_of(const GalleryItem& g) { return std::get<RingItem>(g.structure); }

}  // namespace

TEST(RingReport, RockPaperScissors) {
  auto item = rps_algebra();
  const auto& R = ring_of(item).ring;
  auto r = ring_property_report(R);
  EXPECT_FALSE(r.associative.holds());
  ASSERT_TRUE(r.associative.witness);
  EXPECT_TRUE(r.left_distributive.holds());
  EXPECT_TRUE(r.right_distributive.holds());
  EXPECT_FALSE(r.left_unital.holds());
  EXPECT_TRUE(r.boolean.holds());
  EXPECT_TRUE(r.s_unital.holds());
  EXPECT_TRUE(r.weakly_s_unital.holds());
  EXPECT_TRUE(r.dictionary_consistent);
  EXPECT_TRUE(r.left_identities.empty());

  // xR = R leaves the candidates R and S; RS = R refutes R, SP = S refutes S.
  const auto& G = R.group();
  auto refuted = [&](const std::string& cand, const std::string& m, const std::string& got) {
    return std::any_of(r.left_unital_refutations.begin(), r.left_unital_refutations.end(),
                       [&](const Witness& w) { return w.tuple == std::vector<std::string>{cand, m, got}; });
  };
  EXPECT_EQ(G.name(R.mul(G.parse("R"), G.parse("S"))), "R");
  EXPECT_EQ(G.name(R.mul(G.parse("S"), G.parse("P"))), "S");
  EXPECT_TRUE(refuted("R", "S", "R"));
  EXPECT_TRUE(refuted("S", "P", "S"));
}

TEST(RingReport, MatchesNaiveOnSeveralRings) {
  std::vector<FiniteRing> rings = {testkit::zn_ring(4), testkit::zn_ring(6), finite_field(2, 2).ring,
                                   ring_of(rps_algebra()).ring, ring_of(twisted_pair(2, 1, 1)).ring,
                                   ring_of(twisted_pair(3, 1, 2)).ring};
  // A table that is not distributive: x * y = x.
  Table left_proj(9);
  for (Elem a = 0; a < 3; ++a)
    for (Elem b = 0; b < 3; ++b) left_proj[a * 3 + b] = a;
  rings.push_back(FiniteRing::make(FiniteAbelianGroup::cyclic(3), left_proj));
  for (const auto& R : rings) {
    auto want = naive_properties(R);
    auto r = ring_property_report(R);
    EXPECT_EQ(r.associative.holds(), want.associative);
    EXPECT_EQ(r.left_distributive.holds(), want.left_dist);
    EXPECT_EQ(r.right_distributive.holds(), want.right_dist);
    EXPECT_EQ(r.boolean.holds(), want.boolean);
    EXPECT_EQ(r.left_identities, ElementSet(want.left_ids.begin(), want.left_ids.end()));
    EXPECT_EQ(r.right_identities, ElementSet(want.right_ids.begin(), want.right_ids.end()));
    EXPECT_EQ(r.left_unital.holds(), !want.left_ids.empty());
    EXPECT_TRUE(r.dictionary_consistent);
  }
}

TEST(ModuleAsOperators, RejectsNonDistributive) {
  Table left_proj(9);
  for (Elem a = 0; a < 3; ++a)
    for (Elem b = 0; b < 3; ++b) left_proj[a * 3 + b] = a;
  auto R = FiniteRing::make(FiniteAbelianGroup::cyclic(3), left_proj);
  try {
    module_as_operators(LeftModule::regular(R));
    FAIL();
  } catch (const AlgebraError& e) {
    EXPECT_TRUE(e.kind() == ErrorKind::NotLeftDistributive || e.kind() == ErrorKind::BadZeroOperator);
  }
}

TEST(Derivations, AdjointOnTwistedPair) {
  auto item = twisted_pair(2, 1, 1);
  const auto& ri = ring_of(item);
  const auto& R = ri.ring;
  const auto& G = R.group();
  const Elem v = 3;  // (1,1)
  for (Elem x = 0; x < R.order(); ++x)
    EXPECT_EQ(ri.delta[x], G.sub(R.mul(v, x), R.mul(x, v)));
  auto m = LeftModule::regular(R);
  auto d = derivation_endo_predicates(m, ri.sigma, ri.delta, ri.sigma, ri.delta);
  EXPECT_TRUE(d.all());

  // sigma = x -> 2x on Z/4 is not multiplicative.
  auto z4 = testkit::zn_ring(4);
  auto dz = derivation_endo_predicates(LeftModule::regular(z4), scalar_map(z4.group(), 2),
                                       Table(4, 0), identity_map(4), Table(4, 0));
  EXPECT_FALSE(dz.sigma_R_ring_endo.holds());
  EXPECT_TRUE(dz.sigma_R_ring_endo.witness);
}

TEST(OreRing, ProductMatchesCommutationOracle) {
  std::mt19937_64 rng(21);
  for (const auto& id : {"twisted_pair(2,1,1)", "twisted_pair(3,2,1)"}) {
    auto item = build(id);
    const auto& ri = ring_of(item);
    OreRing o{ri.ring, ri.sigma, ri.delta};
    const auto& G = ri.ring.group();
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(G.order() - 1));
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Elem> a(1 + trial % 3), b(1 + trial % 4);
      for (auto& x : a) x = pick(rng);
      for (auto& x : b) x = pick(rng);
      auto p = ore_ring_product(o, GroupPolynomial::from_dense(a, G.zero(), PolySort::overB),
                                GroupPolynomial::from_dense(b, G.zero(), PolySort::overB));
      auto want = oracle::ore_act(G, o.sigma, o.delta, a, G.zero(), b,
                                  [&](Elem r, Elem s) { return o.ring.mul(r, s); });
      EXPECT_EQ(p.dense(G.zero(), want.size()), want) << id;
      EXPECT_LE(p.degree(), static_cast<int>(want.size()) - 1) << id;
    }
  }
}

TEST(RightIdeals, TwistedPairChain) {
  auto item = twisted_pair(2, 1, 1);
  const auto& ri = ring_of(item);
  OreRing o{ri.ring, ri.sigma, ri.delta};
  auto c = ideal_chain(o, ri.ideal_generators, 6);
  EXPECT_TRUE(c.strict);
  EXPECT_TRUE(c.all_right_ideals());
  EXPECT_EQ(c.ideals.size(), 7u);
  EXPECT_EQ(c.separators.size(), 6u);
  EXPECT_THROW(ideal_chain(o, std::vector<Elem>{0}, 3), AlgebraError);

  // (1,0) R = R, so the span of (1,0) is not a right ideal.
  auto bad = right_ideal_slice_check(o, {GroupPolynomial::monomial(2, 0, 0, PolySort::overB)}, 1);
  EXPECT_FALSE(bad.closed);
  EXPECT_TRUE(bad.witness);
}

TEST(RightIdeals, DecisionAgreesWithLongerShifts) {
  // Closure under r x^k for k <= D + 1 must agree with a check using more shifts.
  auto item = twisted_pair(3, 1, 2);
  const auto& ri = ring_of(item);
  OreRing o{ri.ring, ri.sigma, ri.delta};
  const auto& G = ri.ring.group();
  std::vector<GroupPolynomial> gens = {GroupPolynomial::monomial(1, 0, G.zero(), PolySort::overB),
                                       GroupPolynomial::monomial(1, 1, G.zero(), PolySort::overB)};
  auto r = right_ideal_slice_check(o, gens, 1);
  // Oracle: the span of the generators is closed under right multiplication
  // by every r x^k with k <= 6, computed with the commutation oracle.
  PolySubgroup span(G, 8);
  for (const auto& g : gens) span.insert(g.dense(G.zero(), 9));
  bool closed = true;
  for (const auto& v : span.elements())
    for (Elem rr = 0; rr < G.order(); ++rr)
      for (unsigned k = 0; k <= 6; ++k) {
        std::vector<Elem> rk(k + 1, G.zero());
        rk[k] = rr;
        std::vector<Elem> p(v.begin(), v.begin() + 2);
        auto prod = oracle::ore_act(G, o.sigma, o.delta, p, G.zero(), rk,
                                    [&](Elem a, Elem b) { return o.ring.mul(a, b); });
        prod.resize(9, G.zero());
        closed = closed && span.contains(prod);
      }
  EXPECT_EQ(r.closed, closed);
}

TEST(FormalCollapse, RightDistributiveOnly) {
  auto F4 = finite_field(2, 2);
  auto m = LeftModule::regular(F4.ring);
  auto r = formal_collapse_check(m, F4.frobenius, Table(4, F4.ring.group().zero()), 3);
  ASSERT_TRUE(r.has_value());
  EXPECT_TRUE(r->passed);
}
