#include <gtest/gtest.h>

#include <random>

#include "uloc/representation.hpp"

using namespace uloc;

namespace {

QuiverCategory a2(std::uint32_t p = 2) { return QuiverCategory(QuiverShape(2, {{0, 1}}), p); }
QuiverCategory kronecker(std::uint32_t p = 2) {
  return QuiverCategory(QuiverShape(2, {{0, 1}, {0, 1}}), p);
}
QuiverCategory a3(std::uint32_t p = 2) {
  return QuiverCategory(QuiverShape(3, {{0, 1}, {1, 2}}), p);
}

// Counts tuples of per-vertex matrices commuting with all arrows.
std::size_t brute_hom_count(const QuiverCategory& C, const Representation& m,
                            const Representation& n) {
  const std::uint32_t p = C.field().characteristic();
  std::size_t entries = 0;
  for (std::size_t v = 0; v < m.dims().size(); ++v) entries += m.dim(v) * n.dim(v);
  std::vector<std::uint32_t> idx(entries, 0);
  std::size_t count = 0;
  for (;;) {
    std::vector<FpMatrix> maps;
    std::size_t e = 0;
    for (std::size_t v = 0; v < m.dims().size(); ++v) {
      FpMatrix phi(m.dim(v), n.dim(v));
      for (auto& x : phi.data()) x = idx[e++];
      maps.push_back(phi);
    }
    try {
      C.morphism(m, n, maps);
      ++count;
    } catch (const IllDefinedMorphism&) {
    }
    std::size_t k = entries;
    while (k > 0) {
      if (++idx[k - 1] < p) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  return count;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST(QuiverShapeTest, RejectsCycles) {
  EXPECT_THROW(QuiverShape(2, {{0, 1}, {1, 0}}), CyclicQuiver);
  EXPECT_THROW(QuiverShape(1, {{0, 0}}), CyclicQuiver);
  EXPECT_THROW(QuiverShape(2, {{0, 2}}), ParseError);
}

TEST(QuiverShapeTest, PathsInA3) {
  QuiverShape q(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(q.path_count(0, 2), 1u);
  EXPECT_EQ(q.path_count(0, 0), 1u);
  EXPECT_EQ(q.path_count(2, 0), 0u);
  QuiverShape k(2, {{0, 1}, {0, 1}});
  EXPECT_EQ(k.path_count(0, 1), 2u);
}

TEST(Representations, Projectives) {
  auto C = a2();
  auto p1 = C.projective(0);
  EXPECT_EQ(p1.dims(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(C.projective(1), C.simple(1));
  EXPECT_TRUE(C.is_projective(p1));
  EXPECT_FALSE(C.is_projective(C.simple(0)));
  auto k = kronecker();
  EXPECT_EQ(k.projective(0).dims(), (std::vector<std::size_t>{1, 2}));
}

TEST(Representations, SampleCountsMatchKnownClassifications) {
  // A2 has indecomposables S1, S2, P1; up to total dimension 2 there are
  // S1, S2, S1^2, S2^2, S1+S2, P1.
  EXPECT_EQ(a2().sample_modules(2).size(), 6u);
  // Kronecker over F_2 in dimension (1,1): four pairs of scalars up to F_2^*
  auto ks = kronecker().sample_modules(2);
  std::size_t count11 = 0;
  for (const auto& r : ks)
    if (r.dims() == std::vector<std::size_t>{1, 1}) ++count11;
  EXPECT_EQ(count11, 4u);
  // over F_3 the scalars (a, b) up to F_3^*: (0,0) and the four points of P^1
  auto k3 = kronecker(3).sample_modules(2);
  count11 = 0;
  for (const auto& r : k3)
    if (r.dims() == std::vector<std::size_t>{1, 1}) ++count11;
  EXPECT_EQ(count11, 5u);
}

TEST(Representations, HomDimensionMatchesBruteForce) {
  for (auto C : {a2(), kronecker(), a3()}) {
    auto samples = C.sample_modules(2);
    for (const auto& m : samples)
      for (const auto& n : samples)
        EXPECT_EQ(ipow(2, C.hom_basis(m, n).size()), brute_hom_count(C, m, n))
            << C.describe(m) << " " << C.describe(n);
  }
}

TEST(Representations, ExtMatchesEulerForm) {
  for (auto C : {a2(), kronecker(), a3(), kronecker(3)}) {
    auto samples = C.sample_modules(2);
    for (const auto& m : samples)
      for (const auto& n : samples) {
        auto e = C.ext1(m, n);
        EXPECT_EQ(e.invariants.size(), C.ext1_dimension(m, n)) << C.describe(m) << " " << C.describe(n);
        for (const auto& mid : e.middles) EXPECT_EQ(mid.total_dim(), m.total_dim() + n.total_dim());
      }
  }
}

TEST(Representations, ExtOfSimplesInA2) {
  auto C = a2();
  auto e = C.ext1(C.simple(0), C.simple(1));
  ASSERT_EQ(e.middles.size(), 1u);
  EXPECT_EQ(C.iso_test(e.middles[0], C.projective(0)).verdict, Verdict::Yes);
  EXPECT_TRUE(C.ext1(C.simple(1), C.simple(0)).invariants.empty());
}

TEST(Representations, PropertyExactness) {
  std::mt19937_64 rng(5);
  for (auto C : {a2(3), kronecker(), a3()}) {
    auto samples = C.sample_modules(3);
    std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
    for (int trial = 0; trial < 60; ++trial) {
      auto m = C.direct_sum({samples[pick(rng)], samples[pick(rng)]}).object;
      auto n = samples[pick(rng)];
      auto f = C.random_morphism(m, n, rng, 1);
      auto k = C.kernel(f);
      auto c = C.cokernel(f);
      auto im = C.image(f);
      EXPECT_TRUE(C.is_injective(k.map));
      EXPECT_TRUE(C.is_zero(C.compose(k.map, f)));
      EXPECT_TRUE(C.is_surjective(c.map));
      EXPECT_TRUE(C.is_zero(C.compose(f, c.map)));
      EXPECT_TRUE(C.equal(C.compose(im.epi, im.mono), f));
      EXPECT_EQ(m.total_dim(), k.object.total_dim() + im.object.total_dim());
      EXPECT_EQ(n.total_dim(), c.object.total_dim() + im.object.total_dim());
      auto l = C.lift(C.compose(k.map, C.identity(m)), k.map);
      ASSERT_TRUE(l.has_value());
      auto e = C.extend(c.map, C.compose(C.identity(n), c.map));
      ASSERT_TRUE(e.has_value());
    }
  }
}

TEST(Representations, PresentationIsProjectiveResolution) {
  for (auto C : {a2(), kronecker(), a3()})
    for (const auto& m : C.sample_modules(3)) {
      auto p = C.presentation(m);
      EXPECT_TRUE(C.is_injective(p.sigma));
      EXPECT_TRUE(C.is_projective(p.sigma.source()));
      EXPECT_TRUE(C.is_projective(p.sigma.target()));
      EXPECT_EQ(C.iso_test(C.cokernel(p.sigma).object, m).verdict, Verdict::Yes);
    }
}

TEST(Representations, IsoTestFindsIsomorphisms) {
  auto C = kronecker(3);
  FpMatrix a(1, 1), b(1, 1);
  a(0, 0) = 1;
  b(0, 0) = 2;
  auto x = C.representation({1, 1}, {a, b});
  FpMatrix a2m(1, 1), b2m(1, 1);
  a2m(0, 0) = 2;
  b2m(0, 0) = 1;
  auto y = C.representation({1, 1}, {a2m, b2m});
  // 2 * (1, 2) = (2, 1) mod 3
  auto r = C.iso_test(x, y);
  EXPECT_EQ(r.verdict, Verdict::Yes);
  ASSERT_TRUE(r.iso.has_value());
  EXPECT_TRUE(C.is_invertible(*r.iso));
  FpMatrix c(1, 1);
  c(0, 0) = 1;
  auto z = C.representation({1, 1}, {c, c});
  EXPECT_EQ(C.iso_test(x, z).verdict, Verdict::No);
}

TEST(Representations, JsonRoundTrip) {
  auto C = kronecker(3);
  for (const auto& m : C.sample_modules(2)) EXPECT_EQ(C.module_from_json(C.to_json(m)), m);
  auto f = C.yoneda(0, C.projective(0), [] {
    FpMatrix e(1, 1);
    e(0, 0) = 2;
    return e;
  }());
  EXPECT_TRUE(C.equal(C.morphism_from_json(C.to_json(f)), f));
}

TEST(Representations, ElementMapsHitBasis) {
  auto C = a3();
  for (const auto& m : C.sample_modules(3)) {
    auto maps = C.element_maps(m);
    EXPECT_EQ(maps.size(), m.total_dim());
  }
}

TEST(QuiverOracleTest, LocalTestModules) {
  // inverting the arrow map P2 -> P1 of A2: local modules have X_1 -> X_2 iso
  auto C = a2();
  FpMatrix e(1, 1);
  e(0, 0) = 1;
  auto sigma = C.yoneda(1, C.projective(0), e);
  auto o = C.make_oracle({sigma});
  for (const auto& x : o.test_modules()) EXPECT_EQ(x.dim(0), x.dim(1));
  EXPECT_FALSE(o.test_modules().empty());
  EXPECT_EQ(o.survives(C.projective(0)), Survival::Survives);
  EXPECT_EQ(o.survives(C.simple(0)), Survival::Unknown);
}
