#include <gtest/gtest.h>

#include <random>

#include "uloc/engines.hpp"

using namespace uloc;
using ZCat = IntegerCategory;
using ZMor = ZCat::Morphism;
using ZMod = ZCat::Module;

namespace {

ZCat Z{IntegerRing{}};

ZMod zmod(long n) { return Z.cyclic(BigInt(n)); }
ZMod zfree(std::size_t n) { return Z.free_module(n); }

ZMor zmap(const ZMod& s, const ZMod& t, std::vector<std::vector<long>> rows) {
  Matrix<BigInt> m(s.generators(), t.generators());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return Z.morphism(s, t, m);
}

SigmaEngine<ZCat> invert_two(Bounds b = {}) {
  return SigmaEngine<ZCat>(Z, {zmap(zfree(1), zfree(1), {{2}})}, b);
}

bool power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

long order(const ZMod& m) {
  long o = 1;
  for (const auto& f : m.factors()) o *= f.get_si();
  return o;
}

// Finite abelian groups and free parts used as a corpus.
ZMod random_module(std::mt19937_64& rng, bool allow_free) {
  static const std::vector<std::vector<long>> shapes = {
      {}, {2}, {3}, {4}, {6}, {2, 2}, {2, 4}, {8}, {12}, {2, 6}, {5}};
  std::uniform_int_distribution<std::size_t> d(0, shapes.size() - 1);
  std::vector<BigInt> f;
  for (long x : shapes[d(rng)]) f.emplace_back(x);
  std::size_t fr = allow_free ? std::uniform_int_distribution<std::size_t>(0, 1)(rng) : 0;
  return Z.from_factors(f, fr);
}

QuiverCategory a2() { return QuiverCategory(QuiverShape(2, {{0, 1}}), 2); }

RepMorphism a2_arrow(const QuiverCategory& C) {
  FpMatrix e(1, 1);
  e(0, 0) = 1;
  return C.yoneda(1, C.projective(0), e);
}

}  // namespace

TEST(GoodPushout, MultiplicationByFour) {
  auto E = invert_two();
  auto r = E.is_good_pushout(zmap(zfree(1), zfree(1), {{4}}));
  ASSERT_EQ(r.verdict, Verdict::Yes);
  EXPECT_TRUE(E.verify(*r.witness));
}

TEST(GoodPushout, MultiplicationByThreeRefuted) {
  auto E = invert_two();
  EXPECT_EQ(E.is_good_pushout(zmap(zfree(1), zfree(1), {{3}})).verdict, Verdict::No);
}

TEST(GoodPushout, IdentityHasTrivialWitness) {
  auto E = invert_two();
  auto r = E.is_good_pushout(Z.identity(zmod(6)));
  ASSERT_EQ(r.verdict, Verdict::Yes);
  EXPECT_EQ(r.witness->tau->kind, TriangularTerm<ZCat>::Kind::Trivial);
}

TEST(GoodSurjection, KillingTwoPrimaryPart) {
  auto E = invert_two();
  auto yes = E.is_good_surjection(zmap(zmod(12), zmod(3), {{1}}));
  ASSERT_EQ(yes.verdict, Verdict::Yes);
  EXPECT_TRUE(E.verify(*yes.witness));
  EXPECT_EQ(E.is_good_surjection(zmap(zmod(12), zmod(4), {{1}})).verdict, Verdict::No);
}

TEST(SigmaMember, PowersOfTwo) {
  auto E = invert_two();
  auto r = E.member(zmap(zfree(1), zfree(1), {{8}}));
  ASSERT_EQ(r.verdict, Verdict::Yes);
  EXPECT_TRUE(E.verify(*r.certificate));
  auto three = E.member(zmap(zfree(1), zfree(1), {{3}}));
  EXPECT_EQ(three.verdict, Verdict::Unknown);
  EXPECT_TRUE(three.oracle_refutes);
}

TEST(ExtensionClosure, TwoGroupsUpToOrderFour) {
  auto E = invert_two();
  auto items = E.extension_closure(2);
  ASSERT_EQ(items.size(), 3u);
  std::vector<ZMod> want = {zmod(2), zmod(4), Z.from_factors({BigInt(2), BigInt(2)}, 0)};
  for (const auto& w : want) {
    bool found = false;
    for (const auto& it : items) found = found || it.object == w;
    EXPECT_TRUE(found) << Z.describe(w);
  }
  for (const auto& it : items) {
    EXPECT_TRUE(E.verify_term(*it.tau));
    EXPECT_EQ(Z.cokernel(it.tau->value).object, it.object);
  }
  // length three adds Z/8, Z/2+Z/4 and (Z/2)^3
  EXPECT_EQ(E.extension_closure(3).size(), 6u);
}

TEST(ExtensionClosure, SimpleAtSourceOfA2) {
  auto C = a2();
  SigmaEngine<QuiverCategory> E(C, {a2_arrow(C)});
  auto items = E.extension_closure(2);
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(C.iso_test(items[0].object, C.simple(0)).verdict, Verdict::Yes);
  auto two = C.direct_sum({C.simple(0), C.simple(0)}).object;
  EXPECT_EQ(C.iso_test(items[1].object, two).verdict, Verdict::Yes);
}

TEST(GoodPushout, PropertyMatchesTwoGroupCriterion) {
  // injective with cokernel a 2-group of length at most the bound
  auto E = invert_two();
  std::mt19937_64 rng(3);
  int yes = 0;
  for (int trial = 0; trial < 120; ++trial) {
    auto m = random_module(rng, true);
    auto n = Z.direct_sum({m, random_module(rng, trial % 2 == 0)}).object;
    auto f = Z.random_morphism(m, n, rng, 4);
    if (trial % 3 == 0) f = Z.direct_sum({m, zmod(2)}).inclusions[0];
    auto r = E.is_good_pushout(f);
    auto ck = Z.cokernel(f).object;
    bool expect = Z.is_injective(f) && ck.free_rank() == 0 && power_of_two(order(ck)) &&
                  Z.length(ck).value_or(99) <= E.bounds().ext_bound;
    if (expect) {
      EXPECT_EQ(r.verdict, Verdict::Yes) << Z.describe(f);
      ++yes;
    } else {
      EXPECT_NE(r.verdict, Verdict::Yes) << Z.describe(f);
    }
    if (r.witness) EXPECT_TRUE(E.verify(*r.witness));
  }
  EXPECT_GT(yes, 10);
}

TEST(GoodSurjection, PropertyMatchesTwoGroupKernel) {
  auto E = invert_two();
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 120; ++trial) {
    auto m = random_module(rng, true);
    auto sub = Z.random_morphism(random_module(rng, false), m, rng, 4);
    auto f = Z.cokernel(sub).map;
    auto k = Z.kernel(f).object;
    auto r = E.is_good_surjection(f);
    bool expect = k.free_rank() == 0 && power_of_two(order(k)) &&
                  Z.length(k).value_or(99) <= E.bounds().ext_bound;
    if (expect)
      EXPECT_EQ(r.verdict, Verdict::Yes) << Z.describe(f);
    else
      EXPECT_NE(r.verdict, Verdict::Yes) << Z.describe(f);
    if (r.witness) EXPECT_TRUE(E.verify(*r.witness));
  }
}

TEST(WordReduction, RandomWordsFactorIntoOnePushoutAndOneSurjection) {
  auto E = invert_two();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    auto m = random_module(rng, true);
    std::vector<WordStep<ZCat>> word;
    ZMod cur = m;
    std::uniform_int_distribution<int> len(1, 4);
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
      if (rng() % 2) {
        auto moves = E.pushout_moves(cur);
        ASSERT_FALSE(moves.empty());
        auto g = moves[rng() % moves.size()];
        word.push_back(g);
        cur = g.map.target();
      } else {
        auto s = E.kill_torsion(cur);
        word.push_back(s);
        cur = s.map.target();
      }
    }
    auto c = E.factor(word);
    EXPECT_TRUE(E.verify(c));
    EXPECT_EQ(c.map.source(), m);
    EXPECT_EQ(c.map.target(), cur);
  }
}

TEST(WordReduction, NonComposableWordIsMalformed) {
  auto E = invert_two();
  std::vector<WordStep<ZCat>> word = {E.trivial_pushout(Z.identity(zmod(2))),
                                      E.trivial_pushout(Z.identity(zmod(4)))};
  EXPECT_THROW(E.factor(word), MalformedWord);
}

TEST(WordReduction, TamperedWitnessIsMalformed) {
  auto E = invert_two();
  auto r = E.is_good_pushout(zmap(zfree(1), zfree(1), {{4}}));
  ASSERT_TRUE(r.witness);
  auto w = *r.witness;
  w.map = zmap(zfree(1), zfree(1), {{8}});
  EXPECT_FALSE(E.verify(w));
  EXPECT_THROW(E.factor({w}), MalformedWord);
}

TEST(Revenge, CokernelOfKilledMap) {
  auto E = invert_two();
  auto s = E.member(zmap(zfree(1), zfree(1), {{2}}));
  ASSERT_TRUE(s.certificate);
  // d: Z -> Z/2 kills the image of multiplication by two
  auto d = zmap(zfree(1), zmod(2), {{1}});
  auto w = E.revenge(*s.certificate, d);
  EXPECT_TRUE(E.verify(w));
  EXPECT_EQ(w.map.target(), Z.zero_module());
}

TEST(TriangularClosure, EveryElementIsInSigma) {
  auto E = invert_two();
  for (auto kind : {ClosureKind::Lower, ClosureKind::Upper}) {
    auto terms = E.triangular_closure(kind, 1);
    EXPECT_EQ(terms.size(), 6u);
    for (const auto& t : terms) {
      EXPECT_TRUE(E.verify_term(*t));
      auto r = E.member(t->value);
      EXPECT_EQ(r.verdict, Verdict::Yes) << Z.describe(t->value);
    }
  }
}

TEST(QuiverGoodMaps, ArrowOfA2) {
  auto C = a2();
  SigmaEngine<QuiverCategory> E(C, {a2_arrow(C)});
  auto r = E.member(a2_arrow(C));
  ASSERT_EQ(r.verdict, Verdict::Yes);
  EXPECT_TRUE(E.verify(*r.certificate));
  // projecting S1 away from P1 + S1 is good, while P1 -> S1 has kernel S2
  auto sum = C.direct_sum({C.projective(0), C.simple(0)});
  auto gs = E.is_good_surjection(sum.projections[0]);
  ASSERT_EQ(gs.verdict, Verdict::Yes);
  EXPECT_TRUE(E.verify(*gs.witness));
  auto q = C.cokernel(a2_arrow(C)).map;
  EXPECT_EQ(E.is_good_surjection(q).verdict, Verdict::No);
}
