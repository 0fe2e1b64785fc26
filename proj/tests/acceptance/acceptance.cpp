// End-to-end acceptance run: one line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "uloc/commands.hpp"
#include "uloc/replay.hpp"

using namespace uloc;
using json = nlohmann::json;

namespace {

using ZCat = IntegerCategory;
using ZMod = ZCat::Module;
using ZMor = ZCat::Morphism;
using QCat = QuiverCategory;

struct Outcome {
  bool pass = false;
  std::string detail;
};

ZCat Z{IntegerRing{}};
QCat A2{QuiverShape(2, {{0, 1}}), 2};

ZMod zmod(long n) { return Z.cyclic(BigInt(n)); }
ZMod zsum(std::vector<long> f, std::size_t free = 0) {
  std::vector<BigInt> b(f.begin(), f.end());
  return Z.from_factors(b, free);
}
ZMor times(long k) {
  Matrix<BigInt> m(1, 1);
  m(0, 0) = k;
  return Z.morphism(Z.free_module(1), Z.free_module(1), m);
}
RepMorphism alpha() {
  FpMatrix e(1, 1);
  e(0, 0) = 1;
  return A2.yoneda(1, A2.projective(0), e);
}

SigmaEngine<ZCat> ZE{Z, {times(2)}};
SigmaEngine<QCat> QE{A2, {alpha()}};

// Witnesses gathered from every criterion, replayed at the end.
json z_witnesses = json::array();
json q_witnesses = json::array();

void collect(json& into, const json& report_witnesses) {
  for (const auto& w : report_witnesses) into.push_back(w);
}

// The ten-module corpus as factor lists with a free rank.
struct Shape {
  const char* name;
  std::vector<long> factors;
  std::size_t free;
};
const std::vector<Shape> kCorpus = {
    {"Z", {}, 1},     {"Z2", {2}, 0},     {"Z3", {3}, 0},        {"Z4", {4}, 0},    {"Z6", {6}, 0},
    {"Z8", {8}, 0},   {"Z12", {12}, 0},   {"Z_Z2", {2}, 1},      {"Z2_Z3", {2, 3}, 0}, {"Z_Z", {}, 2},
};

long odd_part(long n) {
  while (n % 2 == 0) n /= 2;
  return n;
}

json corpus_problem() {
  json mods = json::object();
  for (const auto& s : kCorpus) mods[s.name] = {{"factors", s.factors}, {"free", s.free}};
  return {{"ring", "integers"},
          {"modules", mods},
          {"morphisms", {{"two", {{"source", {{"factors", json::array()}, {"free", 1}}},
                                  {"target", {{"factors", json::array()}, {"free", 1}}},
                                  {"matrix", {{2}}}}}}},
          {"sigma", {"two"}}};
}

Report command(const AnyProblem& p, std::string name, std::vector<std::string> args) {
  Invocation inv;
  inv.command = std::move(name);
  inv.args = std::move(args);
  return run(p, inv);
}

// ------------------------------------------------------------------ 1

Outcome commutative_oracle() {
  auto problem = parse_problem(corpus_problem());
  const auto start = std::chrono::steady_clock::now();
  int agree = 0;
  std::string bad;
  for (const auto& s : kCorpus) {
    auto r = command(problem, "induce", {s.name});
    if (r.exit_code != 0) {
      bad += std::string(" ") + s.name + "(error)";
      continue;
    }
    collect(z_witnesses, r.data["witnesses"]);
    // classical localisation: odd parts of the invariant factors, same free rank
    std::multiset<long> want;
    for (long f : s.factors)
      if (odd_part(f) > 1) want.insert(odd_part(f));
    std::multiset<long> got;
    const auto& m = r.data["result"]["module"];
    for (const auto& f : m["factors"]) got.insert(Z.ring().from_json(f).get_si());
    const bool ok = got == want && m["free"].get<std::size_t>() == s.free;
    if (ok) ++agree;
    else bad += std::string(" ") + s.name;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/%zu agree with M (x) Z[1/2], %.2f s", agree, kCorpus.size(), secs);
  return {agree == static_cast<int>(kCorpus.size()) && secs < 5.0, buf + (bad.empty() ? "" : "; mismatch:" + bad)};
}

// ------------------------------------------------------------------ 2

// Elements of a finite module in canonical coordinates.
std::vector<std::vector<long>> elements_of(const ZMod& m) {
  std::vector<std::vector<long>> out{{}};
  for (const auto& d : m.factors()) {
    std::vector<std::vector<long>> next;
    for (const auto& v : out)
      for (long a = 0; a < d.get_si(); ++a) {
        auto w = v;
        w.push_back(a);
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

std::vector<long> reduce(std::vector<long> v, const ZMod& m) {
  for (std::size_t i = 0; i < m.torsion_generators(); ++i) {
    const long d = m.factors()[i].get_si();
    v[i] = ((v[i] % d) + d) % d;
  }
  return v;
}

Outcome kernel_of_induction_matches_torsion() {
  auto problem = parse_problem(corpus_problem());
  const auto& P = std::get<Problem<ZCat>>(problem);
  int match = 0;
  std::string bad;
  for (const auto& s : kCorpus) {
    const auto& m = P.module(s.name);
    auto r = command(problem, "ker-ind", {s.name});
    if (r.exit_code != 0) {
      bad += std::string(" ") + s.name + "(" + r.data.value("message", std::string("unknown")) + ")";
      continue;
    }
    collect(z_witnesses, r.data["witnesses"]);
    auto inc = Z.morphism_from_json(r.data["result"]["inclusion"]);
    // image of the inclusion, element by element
    std::set<std::vector<long>> image;
    if (inc.source().free_rank() == 0)
      for (const auto& x : elements_of(inc.source())) {
        std::vector<long> y(m.generators(), 0);
        for (std::size_t i = 0; i < x.size(); ++i)
          for (std::size_t j = 0; j < m.generators(); ++j) y[j] += x[i] * inc.matrix()(i, j).get_si();
        image.insert(reduce(y, m));
      }
    // 2-primary torsion: multiples of the odd part in each cyclic factor
    std::set<std::vector<long>> want;
    std::vector<std::vector<long>> acc{{}};
    for (const auto& d : m.factors()) {
      std::vector<std::vector<long>> next;
      const long step = odd_part(d.get_si());
      for (const auto& v : acc)
        for (long a = 0; a < d.get_si(); a += step) {
          auto w = v;
          w.push_back(a);
          next.push_back(w);
        }
      acc = std::move(next);
    }
    for (auto v : acc) {
      v.resize(m.generators(), 0);
      want.insert(v);
    }
    if (inc.source().free_rank() == 0 && image == want) ++match;
    else bad += std::string(" ") + s.name;
  }
  return {match == static_cast<int>(kCorpus.size()),
          std::to_string(match) + "/" + std::to_string(kCorpus.size()) +
              " kernels equal the 2-primary torsion element-wise" + (bad.empty() ? "" : "; mismatch:" + bad)};
}

// ------------------------------------------------------------------ 3

template <class Cat>
std::vector<WordStep<Cat>> random_word(const SigmaEngine<Cat>& E, typename Cat::Module m, std::mt19937_64& rng,
                                       int max_len) {
  std::vector<WordStep<Cat>> word;
  const int n = 1 + static_cast<int>(rng() % max_len);
  for (int i = 0; i < n; ++i) {
    auto moves = E.pushout_moves(m);
    if (!moves.empty() && rng() % 2) {
      auto g = moves[rng() % moves.size()];
      m = g.map.target();
      word.push_back(g);
    } else {
      auto s = E.kill_torsion(m);
      m = s.map.target();
      word.push_back(s);
    }
  }
  return word;
}

template <class Cat>
typename Cat::Morphism word_map(const Cat& C, const std::vector<WordStep<Cat>>& word) {
  auto map_of = [](const auto& step) { return std::visit([](const auto& w) { return w.map; }, step); };
  auto acc = map_of(word.front());
  for (std::size_t i = 1; i < word.size(); ++i) acc = C.compose(acc, map_of(word[i]));
  return acc;
}

template <class Cat>
int factor_words(const SigmaEngine<Cat>& E, const std::vector<typename Cat::Module>& mods, int count,
                 std::mt19937_64& rng, json& witnesses) {
  const Cat& C = E.cat();
  int ok = 0;
  for (int i = 0; i < count; ++i) {
    auto m = mods[rng() % mods.size()];
    auto word = random_word(E, m, rng, 4);
    try {
      auto c = E.factor(word);
      const bool exact = C.equal(c.map, word_map(C, word)) && C.equal(C.compose(c.t.map, c.u.map), c.map) &&
                         E.verify(c) && E.verify(c.t) && E.verify(c.u);
      if (exact) {
        ++ok;
        WitnessCodec<Cat> codec(E);
        witnesses.push_back(codec.write(c));
      }
    } catch (const Error&) {
    }
  }
  return ok;
}

Outcome factorisation() {
  std::mt19937_64 rng(0xfac7);
  std::vector<ZMod> zmods = {zsum({}, 1), zmod(2), zmod(4), zmod(6), zmod(12), zsum({2}, 1), zsum({2, 4}), zsum({}, 2)};
  auto qmods = A2.sample_modules(3);
  const int z = factor_words(ZE, zmods, 100, rng, z_witnesses);
  const int q = factor_words(QE, qmods, 100, rng, q_witnesses);
  return {z + q == 200, std::to_string(z) + "/100 over Z, " + std::to_string(q) +
                            "/100 over A2 re-factor as t.u with equal composite"};
}

// ------------------------------------------------------------------ 4, 5

template <class Cat>
struct Local {
  using Cert = SigmaCertificate<Cat>;
  using Ore = OreCalculus<Cat, SigmaOre<Cat>>;
  using Frac = typename Ore::Frac;

  const SigmaEngine<Cat>& E;
  SigmaOre<Cat> set{E};
  Ore ore{set};
  WitnessCodec<Cat> codec{E};

  Cert random_cert(const typename Cat::Module& n, std::mt19937_64& rng) const {
    if (rng() % 4 == 0) return E.identity(n);
    return E.factor(random_word(E, n, rng, 2));
  }
  Frac random_frac(const typename Cat::Module& a, const typename Cat::Module& b, std::mt19937_64& rng) const {
    auto s = random_cert(b, rng);
    return ore.make(E.cat().random_morphism(a, s.map.target(), rng, 2), s);
  }
  // the same fraction with numerator and denominator pushed further along u
  Frac expand(const Frac& x, std::mt19937_64& rng) const {
    auto u = random_cert(x.denominator.target(), rng);
    return ore.make(E.cat().compose(x.numerator, u.map), E.compose(x.cert, u));
  }
  json witness(const Frac& x, const Frac& y, const FractionEquality<Cert>& e) const {
    return {{"type", "equality"}, {"set", "sigma"}, {"x", codec.write(x)}, {"y", codec.write(y)},
            {"u", codec.write(*e.u)}, {"v", codec.write(*e.v)}};
  }
};

struct LawTally {
  int queries = 0;
  int unknown = 0;
  int contradictions = 0;
};

template <class Cat>
void ore_laws(const SigmaEngine<Cat>& E, const std::vector<typename Cat::Module>& mods, int triples,
              std::mt19937_64& rng, json& witnesses, LawTally& t) {
  Local<Cat> L{E};
  using Frac = typename Local<Cat>::Frac;
  auto pick = [&] { return mods[rng() % mods.size()]; };
  // Yes is required: No contradicts the law, Unknown only costs coverage
  auto must = [&](const Frac& x, const Frac& y) {
    auto e = L.ore.equal(x, y);
    ++t.queries;
    if (e.verdict == Verdict::Unknown) ++t.unknown;
    else if (e.verdict == Verdict::No) ++t.contradictions;
    else if (e.u && e.v) {
      if (!L.ore.verify_equality(x, y, *e.u, *e.v)) ++t.contradictions;
      else witnesses.push_back(L.witness(x, y, e));
    }
    return e.verdict;
  };
  for (int i = 0; i < triples; ++i) {
    auto a = pick(), b = pick(), c = pick(), d = pick();
    auto x = L.random_frac(a, b, rng);
    auto y = L.random_frac(b, c, rng);
    auto z = L.random_frac(c, d, rng);
    for (const auto* f : {&x, &y, &z})
      if (!L.ore.verify(*f)) ++t.contradictions;
    must(L.ore.compose(L.ore.compose(x, y), z), L.ore.compose(x, L.ore.compose(y, z)));
    must(L.ore.compose(L.ore.identity(a), x), x);
    must(L.ore.compose(x, L.ore.identity(b)), x);
    must(x, x);
    auto x2 = L.expand(x, rng);
    auto x3 = L.expand(x2, rng);
    must(x, x2);
    must(x2, x);
    must(x2, x3);
    must(x, x3);
    // a parallel fraction: whatever the verdict, it must not depend on the order
    auto w = L.random_frac(a, b, rng);
    auto ew = L.ore.equal(x, w).verdict, we = L.ore.equal(w, x).verdict, e3 = L.ore.equal(x3, w).verdict;
    t.queries += 3;
    t.unknown += (ew == Verdict::Unknown) + (we == Verdict::Unknown) + (e3 == Verdict::Unknown);
    auto clash = [](Verdict p, Verdict q) {
      return (p == Verdict::Yes && q == Verdict::No) || (p == Verdict::No && q == Verdict::Yes);
    };
    if (clash(ew, we) || clash(ew, e3)) ++t.contradictions;
  }
}

Outcome ore_calculus() {
  std::mt19937_64 rng(0x0e);
  LawTally t;
  std::vector<ZMod> zmods = {zsum({}, 1), zmod(2), zmod(3), zmod(4), zsum({2}, 1)};
  ore_laws(ZE, zmods, 250, rng, z_witnesses, t);
  ore_laws(QE, A2.sample_modules(2), 250, rng, q_witnesses, t);
  const double rate = t.queries ? 100.0 * t.unknown / t.queries : 0.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "500 triples, %d equality queries, %d contradictions, unknown %.2f%%", t.queries,
                t.contradictions, rate);
  return {t.contradictions == 0 && rate <= 5.0, buf};
}

template <class Cat>
int right_exact(const SigmaEngine<Cat>& E, const std::vector<typename Cat::Module>& mods, int count,
                std::mt19937_64& rng, json& witnesses) {
  Local<Cat> L{E};
  const Cat& C = E.cat();
  int ok = 0;
  for (int i = 0; i < count; ++i) {
    auto m = mods[rng() % mods.size()], n = mods[rng() % mods.size()];
    auto f = C.random_morphism(m, n, rng, 3);
    auto s = L.random_cert(n, rng);
    auto cmp = L.ore.compare_cokernels(f, s);
    auto q = C.cokernel(f).map;
    const bool good = cmp.there_and_back.verdict == Verdict::Yes && cmp.back_and_there.verdict == Verdict::Yes &&
                      cmp.maps_agree.verdict == Verdict::Yes;
    if (!good) continue;
    ++ok;
    witnesses.push_back(L.witness(L.ore.compose(cmp.forward, cmp.backward), L.ore.identity(q.target()),
                                  cmp.there_and_back));
    witnesses.push_back(L.witness(L.ore.compose(cmp.backward, cmp.forward), L.ore.identity(cmp.localised.object),
                                  cmp.back_and_there));
    witnesses.push_back(L.witness(L.ore.compose(L.ore.of(q), cmp.forward), cmp.localised.map, cmp.maps_agree));
  }
  return ok;
}

Outcome right_exactness() {
  std::mt19937_64 rng(0xc0);
  std::vector<ZMod> zmods = {zsum({}, 1), zmod(2), zmod(6), zmod(12), zsum({2}, 1), zsum({}, 2)};
  const int z = right_exact(ZE, zmods, 60, rng, z_witnesses);
  const int q = right_exact(QE, A2.sample_modules(3), 40, rng, q_witnesses);
  return {z + q == 100, std::to_string(z) + "/60 over Z, " + std::to_string(q) +
                            "/40 over A2 localised cokernels isomorphic to [coker f]"};
}

// ------------------------------------------------------------------ 6

Outcome a2_collapse() {
  auto problem = parse_problem(std::string(R"({
    "ring": {"kind": "path_algebra", "p": 2, "vertices": 2, "arrows": [[1, 2]]},
    "modules": {"P1": {"projective": 1}},
    "morphisms": {"alpha": {"yoneda": {"vertex": 2, "target": "P1", "element": [1]}}},
    "sigma": ["alpha"]})"));
  auto r = command(problem, "loc", {"hom", "P1", "P1"});
  collect(q_witnesses, r.data["witnesses"]);
  const bool dim_one = r.exit_code == 0 && r.data["result"].value("dimension", -1) == 1;

  Local<QCat> L{QE};
  auto zero = L.ore.is_zero(L.ore.identity(A2.simple(0)));
  const bool s1_zero = zero.verdict == Verdict::Yes;
  if (zero.killer)
    q_witnesses.push_back({{"type", "zero"}, {"set", "sigma"}, {"x", L.codec.write(L.ore.identity(A2.simple(0)))},
                           {"killer", L.codec.write(*zero.killer)}});

  // [M] is a sum of dim_2(M) copies of [P1]: follow the induction chain, then
  // match the stable module with P1^n and check both composites of the fraction.
  Induction<QCat> ind(QE);
  auto corpus = A2.sample_modules(3);
  int collapsed = 0;
  for (const auto& m : corpus) {
    const std::size_t n = m.dim(1);
    std::vector<Representation> copies(n, A2.projective(0));
    const auto target = n ? A2.direct_sum(copies).object : A2.zero_module();
    auto res = ind.induce(m);
    if (res.status != InductionStatus::Stabilised) continue;
    auto iso = A2.iso_test(res.module, target);
    if (iso.verdict != Verdict::Yes || !iso.iso) continue;
    auto cert = QE.identity(m);
    for (const auto& step : res.chain.steps) cert = QE.compose(cert, step);
    cert = QE.then_iso(cert, *iso.iso);
    auto x = L.ore.of(cert.map);
    auto inv = L.ore.make(A2.identity(target), cert);
    auto e1 = L.ore.equal(L.ore.compose(x, inv), L.ore.identity(m));
    auto e2 = L.ore.equal(L.ore.compose(inv, x), L.ore.identity(target));
    if (e1.verdict != Verdict::Yes || e2.verdict != Verdict::Yes) continue;
    ++collapsed;
    q_witnesses.push_back(L.witness(L.ore.compose(x, inv), L.ore.identity(m), e1));
    q_witnesses.push_back(L.witness(L.ore.compose(inv, x), L.ore.identity(target), e2));
  }
  return {dim_one && s1_zero && collapsed == static_cast<int>(corpus.size()),
          std::string("dim End[P1] ") + (dim_one ? "= 1" : "!= 1") + ", [S1] " + (s1_zero ? "zero" : "not zero") +
              ", " + std::to_string(collapsed) + "/" + std::to_string(corpus.size()) + " objects iso to [P1]^n"};
}

// ------------------------------------------------------------------ 7

Outcome sigma_trivial() {
  Induction<ZCat> ind(ZE);
  WitnessCodec<ZCat> codec(ZE);
  const int bound = 3;
  std::set<std::vector<BigInt>> trivial, closure;
  int unknown = 0;
  auto sample = Z.sample_modules(bound);
  sample.push_back(Z.zero_module());
  for (const auto& m : sample) {
    auto r = ind.is_sigma_trivial(m);
    if (r.verdict == Verdict::Unknown) ++unknown;
    if (r.verdict != Verdict::Yes) continue;
    if (r.certificate) z_witnesses.push_back(codec.write(*r.certificate));
    if (m.free_rank() == 0) trivial.insert(m.factors());
  }
  for (const auto& it : ZE.extension_closure(bound)) {
    z_witnesses.push_back({{"type", "closure_item"}, {"tau", codec.write(it.tau)},
                           {"projection", Z.to_json(it.projection)}});
    closure.insert(it.object.factors());
  }
  closure.insert(std::vector<BigInt>{});  // the zero module is the empty extension
  const bool six = ind.is_sigma_trivial(zmod(6)).verdict == Verdict::No;
  const bool eight = ind.is_sigma_trivial(zmod(8)).verdict == Verdict::Yes;
  return {trivial == closure && unknown == 0 && six && eight,
          std::to_string(trivial.size()) + " sigma-trivial classes, closure has " + std::to_string(closure.size()) +
              ", Z/6 " + (six ? "rejected" : "not rejected") + ", Z/8 " + (eight ? "accepted" : "not accepted")};
}

// ------------------------------------------------------------------ 8

Outcome stable_flatness() {
  Induction<ZCat> ind(ZE);
  std::vector<ZMod> corpus;
  for (const auto& s : kCorpus) corpus.push_back(zsum(s.factors, s.free));
  auto r = ind.stable_flatness_check(corpus);
  int zero = 0;
  for (const auto& e : r.entries) zero += e.tor_vanishes == Verdict::Yes;
  const bool ring = r.ring.tor_vanishes == Verdict::Yes;
  return {r.verdict == Verdict::Yes && ring && zero == static_cast<int>(corpus.size()),
          std::to_string(zero) + "/" + std::to_string(corpus.size()) + " Tor_1(M, Z[1/2]) vanish, Tor_1(Z[1/2], Z[1/2]) " +
              (ring ? "vanishes" : "does not vanish")};
}

// ------------------------------------------------------------------ 9

Outcome sylvester() {
  std::vector<ZMod> small = {zsum({}, 1), zmod(2), zmod(3), zmod(4), zmod(6), zsum({3}, 1), zsum({2, 2})};
  std::vector<ZMor> maps;
  for (const auto& a : small)
    for (const auto& b : small)
      for (auto& f : Z.hom_elements(a, b, 1, 64)) maps.push_back(std::move(f));
  std::vector<ZMod> corpus;
  for (const auto& s : kCorpus) corpus.push_back(zsum(s.factors, s.free));
  WitnessCodec<ZCat> codec(ZE);

  std::string detail;
  bool ok = true;
  for (const char* name : {"p:2", "p:3", "rational"}) {
    auto rho = parse_rank(Z, name);
    auto severe = full_set_severe_check(Z, rho, maps);
    int full = 0;
    for (const auto& m : corpus) {
      auto f = construct_full_map(Z, m, rho);
      auto c = rank_of_map(Z, f, rho);
      if (!c.full || c.source_rank != rho(m)) continue;
      ++full;
      auto w = codec.write(c);
      w["rho"] = name;
      z_witnesses.push_back(w);
    }
    const bool pass = severe.verdict() == Verdict::Yes && full == static_cast<int>(corpus.size());
    ok = ok && pass;
    detail += std::string(name) + " " + (pass ? "ok" : "fails") + ", ";
  }

  auto rho3 = rank_mod_p(Z, 3);
  auto targets = Z.sample_modules(2);
  targets.insert(targets.end(), corpus.begin(), corpus.end());
  FullMapOre<ZCat> set(Z, rho3, targets, 1);
  auto probe = division_ring_probe(set, corpus, 1, 4096);
  int matched = 0;
  for (const auto& m : probe.modules) {
    long want = 1;
    for (long i = 0; i < m.rank; ++i) want *= 3;
    matched += m.full_map_inverted == Verdict::Yes && m.hom_classes && static_cast<long>(*m.hom_classes) == want;
  }
  for (const auto& x : probe.elements) {
    auto w = codec.write(x);
    w["set"] = "full";
    w["rho"] = "p:3";
    z_witnesses.push_back(w);
  }
  const bool field = probe.classes == 3 && probe.nonzero_invertible == Verdict::Yes &&
                     probe.zero_unique == Verdict::Yes && matched == static_cast<int>(corpus.size());
  return {ok && field, detail + "p:3 probe " + std::to_string(probe.classes) + " classes, " + std::to_string(matched) +
                           "/" + std::to_string(corpus.size()) + " modules [M] = D^rho(M)"};
}

// ------------------------------------------------------------------ 10

Outcome replay_everything() {
  Replayer<ZCat> zr(ZE, [](const std::string& n) { return parse_rank(Z, n); });
  Replayer<QCat> qr(QE, [](const std::string& n) { return parse_rank(A2, n); });
  auto a = zr.replay_all(z_witnesses);
  auto b = qr.replay_all(q_witnesses);
  const std::size_t total = z_witnesses.size() + q_witnesses.size();
  std::string detail = std::to_string(a.checked + b.checked) + "/" + std::to_string(total) + " witnesses replayed";
  if (!a.ok) detail += "; Z: " + a.failure;
  if (!b.ok) detail += "; A2: " + b.failure;
  return {a.ok && b.ok && a.checked + b.checked == total && total > 0, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"commutative oracle", commutative_oracle},
      {"kernel of induction", kernel_of_induction_matches_torsion},
      {"factorisation", factorisation},
      {"ore calculus laws", ore_calculus},
      {"right exactness", right_exactness},
      {"A2 collapse", a2_collapse},
      {"sigma-trivial modules", sigma_trivial},
      {"stable flatness", stable_flatness},
      {"sylvester rank functions", sylvester},
      {"certificate replay", replay_everything},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%-4s %2zu %-26s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
