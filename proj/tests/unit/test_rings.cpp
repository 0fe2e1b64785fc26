#include <gtest/gtest.h>

#include <random>

#include "uloc/error.hpp"
#include "uloc/rings.hpp"

using namespace uloc;

TEST(Primality, SmallNumbers) {
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(3));
  EXPECT_FALSE(is_prime(4));
  EXPECT_TRUE(is_prime(97));
  EXPECT_FALSE(is_prime(91));
  EXPECT_TRUE(is_prime(1000003));
}

TEST(PolyRingTest, RejectsCompositeCharacteristic) {
  EXPECT_THROW(PolyRing(4), NotPrime);
  EXPECT_THROW(PrimeField(1), NotPrime);
  EXPECT_NO_THROW(PolyRing(2));
}

TEST(IntegerRingTest, DivmodIsEuclidean) {
  IntegerRing Z;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-1000, 1000);
  for (int i = 0; i < 500; ++i) {
    BigInt a = d(rng), b = d(rng);
    if (b == 0) continue;
    auto [q, r] = Z.divmod(a, b);
    EXPECT_EQ(q * b + r, a);
    EXPECT_TRUE(Z.smaller(r, b));
  }
}

TEST(IntegerRingTest, GcdExtendedIsBezout) {
  IntegerRing Z;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-500, 500);
  for (int i = 0; i < 500; ++i) {
    BigInt a = d(rng), b = d(rng);
    auto g = Z.gcd_ext(a, b);
    EXPECT_EQ(g.s * a + g.t * b, g.g);
    EXPECT_GE(g.g, 0);
    if (a != 0 || b != 0) {
      EXPECT_TRUE(Z.divides(g.g, a));
      EXPECT_TRUE(Z.divides(g.g, b));
    }
  }
}

TEST(IntegerRingTest, NormaliseAndUnits) {
  IntegerRing Z;
  EXPECT_EQ(Z.normalize(BigInt(-6)), 6);
  EXPECT_TRUE(Z.is_unit(BigInt(-1)));
  EXPECT_FALSE(Z.is_unit(BigInt(2)));
  EXPECT_EQ(Z.reduce(BigInt(-1), BigInt(4)), 3);
}

TEST(IntegerRingTest, LengthCountsPrimeFactors) {
  IntegerRing Z;
  EXPECT_EQ(Z.length(BigInt(1)), 0);
  EXPECT_EQ(Z.length(BigInt(12)), 3);
  EXPECT_EQ(Z.length(BigInt(-30)), 3);
  EXPECT_EQ(Z.length(BigInt(1024)), 10);
}

TEST(IntegerRingTest, WindowIsSymmetric) {
  IntegerRing Z;
  auto w = Z.window(2);
  ASSERT_EQ(w.size(), 5u);
  EXPECT_EQ(w[0], 0);
  EXPECT_EQ(w[1], 1);
  EXPECT_EQ(w[2], -1);
}

TEST(IntegerRingTest, JsonRoundTrip) {
  IntegerRing Z;
  BigInt big("123456789012345678901234567890");
  EXPECT_EQ(Z.from_json(Z.to_json(big)), big);
  EXPECT_EQ(Z.from_json(Z.to_json(BigInt(-17))), -17);
}

namespace {

Poly random_poly(std::mt19937_64& rng, std::uint32_t p, int max_deg) {
  std::uniform_int_distribution<std::uint32_t> c(0, p - 1);
  std::uniform_int_distribution<int> dg(-1, max_deg);
  Poly out;
  int deg = dg(rng);
  for (int i = 0; i <= deg; ++i) out.c.push_back(c(rng));
  while (!out.c.empty() && out.c.back() == 0) out.c.pop_back();
  return out;
}

}  // namespace

TEST(PolyRingTest, DivmodIsEuclidean) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PolyRing R(p);
    std::mt19937_64 rng(p);
    for (int i = 0; i < 300; ++i) {
      Poly a = random_poly(rng, p, 6), b = random_poly(rng, p, 4);
      if (R.is_zero(b)) continue;
      auto [q, r] = R.divmod(a, b);
      EXPECT_EQ(R.add(R.mul(q, b), r), a);
      EXPECT_TRUE(R.smaller(r, b));
    }
  }
}

TEST(PolyRingTest, GcdIsMonicBezout) {
  PolyRing R(3);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    Poly a = random_poly(rng, 3, 5), b = random_poly(rng, 3, 5);
    auto g = R.gcd_ext(a, b);
    EXPECT_EQ(R.add(R.mul(g.s, a), R.mul(g.t, b)), g.g);
    if (!R.is_zero(g.g)) EXPECT_EQ(g.g.c.back(), 1u);
  }
}

TEST(PolyRingTest, LengthCountsIrreducibleFactors) {
  PolyRing R(2);
  // x^2 + 1 = (x + 1)^2 over F_2
  EXPECT_EQ(R.length(Poly{{1, 0, 1}}), 2);
  // x^2 + x + 1 is irreducible over F_2
  EXPECT_EQ(R.length(Poly{{1, 1, 1}}), 1);
  EXPECT_EQ(R.length(Poly{{0, 0, 0, 1}}), 3);
}

TEST(PolyRingTest, ToString) {
  PolyRing R(2);
  EXPECT_EQ(R.to_string(Poly{{1, 0, 1}}), "x^2+1");
  EXPECT_EQ(R.to_string(Poly{}), "0");
}

TEST(PrimeFieldTest, InverseAndArithmetic) {
  PrimeField F(7);
  for (std::uint32_t a = 1; a < 7; ++a) EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
  EXPECT_EQ(F.sub(2, 5), 4u);
  EXPECT_EQ(F.from_int(-1), 6u);
}
