#include <benchmark/benchmark.h>

#include <random>

#include "uloc/engines.hpp"

using namespace uloc;

namespace {

IntegerCategory Z{IntegerRing{}};

IntegerCategory::Morphism times(long k) {
  Matrix<BigInt> m(1, 1);
  m(0, 0) = k;
  return Z.morphism(Z.free_module(1), Z.free_module(1), m);
}

void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> d(-50, 50);
  Matrix<BigInt> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = d(rng);
  IntegerRing R;
  for (auto _ : state) benchmark::DoNotOptimize(la::smith(R, a));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16);

void BM_SigmaMember(benchmark::State& state) {
  SigmaEngine<IntegerCategory> E(Z, {times(2)});
  const auto s = times(1L << state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(E.member(s));
}
BENCHMARK(BM_SigmaMember)->Arg(1)->Arg(2)->Arg(3);

void BM_InduceCyclic(benchmark::State& state) {
  SigmaEngine<IntegerCategory> E(Z, {times(2)});
  Induction<IntegerCategory> ind(E);
  const auto m = Z.cyclic(BigInt(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ind.induce(m));
}
BENCHMARK(BM_InduceCyclic)->Arg(12)->Arg(96)->Arg(720);

void BM_FractionEquality(benchmark::State& state) {
  SigmaEngine<IntegerCategory> E(Z, {times(2)});
  SigmaOre<IntegerCategory> set(E);
  OreCalculus<IntegerCategory, SigmaOre<IntegerCategory>> ore(set);
  auto c2 = *E.member(times(2)).certificate;
  auto c4 = *E.member(times(4)).certificate;
  auto x = ore.make(times(1), c2);
  auto y = ore.make(times(2), c4);
  for (auto _ : state) benchmark::DoNotOptimize(ore.equal(x, y));
}
BENCHMARK(BM_FractionEquality);

void BM_QuiverHomA3(benchmark::State& state) {
  QuiverCategory C(QuiverShape(3, {{0, 1}, {1, 2}}), 3);
  auto m = C.direct_sum({C.projective(0), C.projective(0), C.simple(1)}).object;
  for (auto _ : state) benchmark::DoNotOptimize(C.hom(m, m));
}
BENCHMARK(BM_QuiverHomA3);

}  // namespace
BENCHMARK_MAIN();
