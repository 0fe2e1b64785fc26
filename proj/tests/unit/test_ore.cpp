#include <gtest/gtest.h>

#include <gmpxx.h>

#include <random>
#include <set>

#include "uloc/engines.hpp"

using namespace uloc;
using ZCat = IntegerCategory;
using ZMor = ZCat::Morphism;
using ZMod = ZCat::Module;
using ZOre = OreCalculus<ZCat, SigmaOre<ZCat>>;

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

struct TwoInverted {
  SigmaEngine<ZCat> engine{Z, {zmap(zfree(1), zfree(1), {{2}})}};
  SigmaOre<ZCat> set{engine};
  ZOre ore{set};

  ZOre::Frac over(long a, long s) const {
    auto sm = zmap(zfree(1), zfree(1), {{s}});
    auto c = engine.member(sm).certificate;
    if (!c) throw std::runtime_error("denominator not certified");
    return ore.make(zmap(zfree(1), zfree(1), {{a}}), *c);
  }
};

// Value in Q of an endomorphism fraction of Z whose middle object has free
// rank one: the ratio of free coordinates, computed without the calculus.
mpq_class value(const ZOre::Frac& x) {
  const auto& mid = x.numerator.target();
  EXPECT_EQ(mid.free_rank(), 1u);
  const std::size_t j = mid.torsion_generators();
  mpq_class q(x.numerator.matrix()(0, j), x.denominator.matrix()(0, j));
  q.canonicalize();
  return q;
}

}  // namespace

TEST(OreCalculusZ, HalfTimesTwoIsOne) {
  TwoInverted S;
  auto half = S.over(1, 2);
  auto two = S.ore.of(zmap(zfree(1), zfree(1), {{2}}));
  auto one = S.ore.identity(zfree(1));
  auto r = S.ore.equal(S.ore.compose(half, two), one);
  ASSERT_EQ(r.verdict, Verdict::Yes);
  EXPECT_TRUE(S.ore.verify_equality(S.ore.compose(half, two), one, *r.u, *r.v));
  EXPECT_EQ(S.ore.equal(S.ore.compose(two, half), one).verdict, Verdict::Yes);
}

TEST(OreCalculusZ, EqualityOfFractions) {
  TwoInverted S;
  EXPECT_EQ(S.ore.equal(S.over(2, 4), S.over(1, 2)).verdict, Verdict::Yes);
  EXPECT_EQ(S.ore.equal(S.over(1, 2), S.over(1, 4)).verdict, Verdict::No);
  EXPECT_EQ(S.ore.equal(S.ore.add(S.over(1, 2), S.over(1, 2)), S.ore.identity(zfree(1))).verdict,
            Verdict::Yes);
}

TEST(OreCalculusZ, TorsionBecomesZero) {
  TwoInverted S;
  auto x = S.ore.of(zmap(zfree(1), zmod(4), {{1}}));
  auto r = S.ore.is_zero(x);
  ASSERT_EQ(r.verdict, Verdict::Yes);
  EXPECT_TRUE(Z.is_zero(Z.compose(x.numerator, r.killer->map)));
  EXPECT_EQ(S.ore.is_zero(S.ore.of(zmap(zfree(1), zmod(3), {{1}}))).verdict, Verdict::No);
}

TEST(OreCalculusZ, PropertyCompositionMatchesRationalValues) {
  TwoInverted S;
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> num(-3, 3), ex(0, 3);
  for (int trial = 0; trial < 40; ++trial) {
    auto x = S.over(num(rng), 1L << ex(rng));
    auto y = S.over(num(rng), 1L << ex(rng));
    auto xy = S.ore.compose(x, y);
    EXPECT_TRUE(S.ore.verify(xy));
    EXPECT_EQ(value(xy), value(x) * value(y));
    auto sum = S.ore.add(x, y);
    EXPECT_EQ(value(sum), value(x) + value(y));
    // equal exactly when the values agree
    auto r = S.ore.equal(x, y);
    EXPECT_EQ(r.verdict == Verdict::Yes, value(x) == value(y));
    EXPECT_NE(r.verdict, Verdict::Unknown);
  }
}

TEST(OreCalculusZ, EndomorphismsOfZ) {
  TwoInverted S;
  auto h = S.ore.enumerate(zfree(1), zfree(1), 2, 4096);
  std::set<mpq_class> values;
  for (const auto& x : h.classes) values.insert(value(x));
  EXPECT_EQ(values.size(), h.classes.size());
  EXPECT_TRUE(values.count(mpq_class(1, 8)));
  EXPECT_TRUE(values.count(mpq_class(-2)));
}

TEST(OreCalculusZ, RightExactnessOnCokernels) {
  TwoInverted S;
  std::mt19937_64 rng(8);
  std::vector<ZMod> corpus = {zmod(2), zmod(6), zmod(12), zfree(1), Z.from_factors({BigInt(2)}, 1)};
  for (int trial = 0; trial < 12; ++trial) {
    auto m = corpus[rng() % corpus.size()];
    auto n = corpus[rng() % corpus.size()];
    auto f = Z.random_morphism(m, n, rng, 3);
    auto moves = S.engine.pushout_moves(n);
    auto s = S.engine.certificate(moves[rng() % moves.size()]);
    auto cmp = S.ore.compare_cokernels(f, s);
    EXPECT_EQ(cmp.there_and_back.verdict, Verdict::Yes);
    EXPECT_EQ(cmp.back_and_there.verdict, Verdict::Yes);
    EXPECT_EQ(cmp.maps_agree.verdict, Verdict::Yes);
  }
}

TEST(OreCalculusQuiver, EndomorphismsOfProjectiveInA2) {
  QuiverCategory C(QuiverShape(2, {{0, 1}}), 2);
  FpMatrix e(1, 1);
  e(0, 0) = 1;
  auto arrow = C.yoneda(1, C.projective(0), e);
  SigmaEngine<QuiverCategory> E(C, {arrow});
  SigmaOre<QuiverCategory> set(E);
  OreCalculus<QuiverCategory, SigmaOre<QuiverCategory>> ore(set);
  auto h = ore.enumerate(C.projective(0), C.projective(0), 2, 256);
  ASSERT_TRUE(h.dimension.has_value());
  EXPECT_EQ(*h.dimension, 1u);
  // the arrow becomes invertible
  auto inv = ore.inverse(ore.of(arrow));
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(ore.equal(ore.compose(ore.of(arrow), *inv), ore.identity(C.projective(1))).verdict,
            Verdict::Yes);
  EXPECT_EQ(ore.is_zero(ore.of(C.cokernel(arrow).map)).verdict, Verdict::Yes);
}
