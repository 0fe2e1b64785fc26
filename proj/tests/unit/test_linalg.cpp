#include <gtest/gtest.h>

#include <random>

#include "uloc/linalg.hpp"
#include "uloc/rings.hpp"

using namespace uloc;
using ZMat = Matrix<BigInt>;

namespace {

ZMat random_int_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  ZMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// Determinant by cofactor expansion; only used on tiny matrices.
BigInt det(const ZMat& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  BigInt out = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) cols.push_back(k);
    BigInt minor = det(m.select_rows(rows).select_cols(cols));
    out += (j % 2 ? -1 : 1) * m(0, j) * minor;
  }
  return out;
}

}  // namespace

TEST(Smith, DiagonalExample) {
  IntegerRing Z;
  ZMat a(2, 2);
  a(0, 0) = 2;
  a(1, 1) = 3;
  auto f = la::smith(Z, a);
  EXPECT_EQ(f.rank, 2u);
  EXPECT_EQ(f.D(0, 0), 1);
  EXPECT_EQ(f.D(1, 1), 6);
}

TEST(Smith, PropertyRandomIntegerMatrices) {
  IntegerRing Z;
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> dim(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    ZMat a = random_int_matrix(rng, r, c, 9);
    auto f = la::smith(Z, a);
    EXPECT_EQ(la::mul(Z, la::mul(Z, f.U, a), f.V), f.D);
    EXPECT_EQ(la::mul(Z, f.V, f.Vinv), la::identity(Z, c));
    EXPECT_TRUE(Z.is_unit(det(f.U)));
    EXPECT_TRUE(Z.is_unit(det(f.V)));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) EXPECT_EQ(f.D(i, j), 0);
    for (std::size_t i = 0; i < f.rank; ++i) {
      EXPECT_GT(f.D(i, i), 0);
      if (i + 1 < f.rank) EXPECT_TRUE(Z.divides(f.D(i, i), f.D(i + 1, i + 1)));
    }
    for (std::size_t i = f.rank; i < std::min(r, c); ++i) EXPECT_EQ(f.D(i, i), 0);
  }
}

TEST(Smith, PropertyPolynomialMatrices) {
  PolyRing R(3);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint32_t> coef(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    Matrix<Poly> a(3, 3);
    for (auto& e : a.data()) {
      Poly p;
      for (int k = 0; k < 3; ++k) p.c.push_back(coef(rng));
      while (!p.c.empty() && p.c.back() == 0) p.c.pop_back();
      e = p;
    }
    auto f = la::smith(R, a);
    EXPECT_EQ(la::mul(R, la::mul(R, f.U, a), f.V), f.D);
    EXPECT_EQ(la::mul(R, f.V, f.Vinv), la::identity(R, 3));
    for (std::size_t i = 0; i + 1 < f.rank; ++i)
      EXPECT_TRUE(R.divides(f.D(i, i), f.D(i + 1, i + 1)));
  }
}

TEST(Solve, RandomConsistentSystems) {
  IntegerRing Z;
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    ZMat a = random_int_matrix(rng, 3, 4, 5);
    ZMat x = random_int_matrix(rng, 4, 2, 5);
    ZMat b = la::mul(Z, a, x);
    auto sol = la::solve(Z, a, b);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(la::mul(Z, a, *sol), b);
  }
}

TEST(Solve, DetectsUnsolvableOverIntegers) {
  IntegerRing Z;
  ZMat a(1, 1), b(1, 1);
  a(0, 0) = 2;
  b(0, 0) = 1;
  EXPECT_FALSE(la::solve(Z, a, b).has_value());
}

TEST(Kernels, LeftAndRight) {
  IntegerRing Z;
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    ZMat a = random_int_matrix(rng, 4, 3, 4);
    ZMat l = la::left_kernel(Z, a);
    EXPECT_TRUE(la::is_zero(Z, la::mul(Z, l, a)));
    EXPECT_EQ(l.rows() + la::rank(Z, a), 4u);
    ZMat r = la::right_kernel(Z, a);
    EXPECT_TRUE(la::is_zero(Z, la::mul(Z, a, r)));
    EXPECT_EQ(r.cols() + la::rank(Z, a), 3u);
  }
}

TEST(Solve, PrimeFieldEliminates) {
  PrimeField F(5);
  Matrix<std::uint32_t> a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = 3;
  a(1, 1) = 4;
  auto inv = la::solve(F, a, la::identity(F, 2));
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(la::mul(F, a, *inv), la::identity(F, 2));
}
