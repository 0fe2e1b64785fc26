#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uloc/category.hpp"
#include "uloc/good_maps.hpp"

namespace uloc {

// Which leg of a pushout a certificate is transported to: for pushout(t, x)
// the a_prime leg, for pushout(x, t) the b_prime leg.
enum class LegSide { First, Second };

template <class Cert>
struct Annihilation {
  Verdict verdict = Verdict::Unknown;  // Yes: killer found, No: provably none
  std::optional<Cert> killer;
  std::string reason;
};

// numerator . denominator^-1 : numerator.source -> denominator.source
template <class Cat, class Cert>
struct Fraction {
  typename Cat::Morphism numerator;
  typename Cat::Morphism denominator;
  Cert cert;
};

// x = y witnessed by a.u = b.v and s.u = t.v with u, v certified.
template <class Cert>
struct FractionEquality {
  Verdict verdict = Verdict::Unknown;
  std::optional<Cert> u;
  std::optional<Cert> v;
  std::string reason;
};

template <class Cat, class Cert>
struct LocalCokernel {
  typename Cat::Module object;
  Fraction<Cat, Cert> map;
};

template <class Cat, class Cert>
struct HomEnumeration {
  std::vector<Fraction<Cat, Cert>> classes;
  std::size_t denominators = 0;
  std::size_t fractions = 0;
  std::optional<std::size_t> dimension;  // when classes form an F_p-space
};

template <class Cat, class Cert>
struct CokernelComparison {
  LocalCokernel<Cat, Cert> localised;
  Fraction<Cat, Cert> forward;   // [coker f] -> localised object
  Fraction<Cat, Cert> backward;
  FractionEquality<Cert> there_and_back;
  FractionEquality<Cert> back_and_there;
  FractionEquality<Cert> maps_agree;
};

// Denominators drawn from sigma, certified by good-map factorisations.
template <class Cat>
class SigmaOre {
 public:
  using Module = typename Cat::Module;
  using Morphism = typename Cat::Morphism;
  using Cert = SigmaCertificate<Cat>;
  using PO = Pushout<Module, Morphism>;

  explicit SigmaOre(const SigmaEngine<Cat>& engine) : e_(&engine) {}

  const Cat& cat() const { return e_->cat(); }
  const SigmaEngine<Cat>& engine() const { return *e_; }
  static const Morphism& map_of(const Cert& c) { return c.map; }

  Cert identity(const Module& m) const { return e_->identity(m); }
  Cert compose(const Cert& a, const Cert& b) const { return e_->compose(a, b); }
  Cert then_iso(const Cert& c, const Morphism& iso) const { return e_->then_iso(c, iso); }
  bool verify(const Cert& c) const { return e_->verify(c); }
  std::optional<Cert> certify(const Morphism& s) const { return e_->member(s).certificate; }
  Cert leg(const Cert& t, const Morphism& other, const PO& po, LegSide side) const;
  Annihilation<Cert> annihilate(const Morphism& d) const;
  std::vector<Cert> denominators(const Module& n) const;

 private:
  std::vector<Cert> advance(const Cert& c) const;
  const SigmaEngine<Cat>* e_;
};

template <class Cat, class Set>
class OreCalculus {
 public:
  using Module = typename Cat::Module;
  using Morphism = typename Cat::Morphism;
  using Cert = typename Set::Cert;
  using Frac = Fraction<Cat, Cert>;
  using Equality = FractionEquality<Cert>;

  explicit OreCalculus(const Set& set) : set_(&set) {}

  const Set& set() const { return *set_; }
  const Cat& cat() const { return set_->cat(); }

  Frac of(const Morphism& f) const { return {f, cat().identity(f.target()), set_->identity(f.target())}; }
  Frac identity(const Module& m) const { return of(cat().identity(m)); }
  Frac make(const Morphism& numerator, const Cert& denominator) const;
  const Module& source(const Frac& x) const { return x.numerator.source(); }
  const Module& target(const Frac& x) const { return x.denominator.source(); }
  bool verify(const Frac& x) const;

  Equality equal(const Frac& x, const Frac& y) const;
  bool verify_equality(const Frac& x, const Frac& y, const Cert& u, const Cert& v) const;
  Annihilation<Cert> is_zero(const Frac& x) const;
  Frac compose(const Frac& x, const Frac& y) const;
  Frac add(const Frac& x, const Frac& y) const;
  Frac negate(const Frac& x) const { return {cat().negate(x.numerator), x.denominator, x.cert}; }
  // s . a^-1 when the numerator itself is certified.
  std::optional<Frac> inverse(const Frac& x) const;
  LocalCokernel<Cat, Cert> cokernel(const Frac& x) const;
  // Compares [coker f] with the localised cokernel of the fraction (f.s) / s.
  CokernelComparison<Cat, Cert> compare_cokernels(const Morphism& f, const Cert& s) const;
  HomEnumeration<Cat, Cert> enumerate(const Module& m, const Module& n, int window,
                                      std::size_t cap) const;

 private:
  const Set* set_;
};

// ------------------------------------------------------------------ SigmaOre

template <class Cat>
SigmaCertificate<Cat> SigmaOre<Cat>::leg(const Cert& ct, const Morphism& other, const PO& po,
                                         LegSide side) const {
  const Cat& C = cat();
  const auto& g = ct.t;
  const auto& h = ct.u;
  // push the good pushout along other
  auto attach = C.compose(g.attach, other);
  auto po_g = pushout(C, g.tau->value, attach);
  GoodPushoutWitness<Cat> g1{g.tau, attach, C.identity(po_g.object), po_g.a_prime};
  auto po_orig = pushout(C, g.tau->value, g.attach);
  auto x1 = C.compose(C.inverse(g.theta),
                      induced(C, po_orig, po_g.b_prime, C.compose(other, po_g.a_prime)));
  // then the good surjection along x1
  auto a = C.compose(h.a, x1);
  auto ck = C.cokernel(a);
  GoodSurjectionWitness<Cat> h1{h.tau, a, C.identity(ck.object), ck.map};
  auto e = C.extend(C.cokernel(h.a).map, C.compose(x1, ck.map));
  if (!e) throw VerificationFailure("pushed surjection does not factor");
  auto x2 = C.compose(C.inverse(h.theta), *e);
  auto gh = C.compose(po_g.a_prime, ck.map);
  auto psi = side == LegSide::Second ? induced(C, po, gh, C.negate(x2))
                                     : induced(C, po, C.negate(x2), gh);
  auto out = e_->then_iso(Cert{g1, h1, gh}, C.inverse(psi));
  const auto& want = side == LegSide::Second ? po.b_prime : po.a_prime;
  if (!C.equal(out.map, want)) throw VerificationFailure("transported certificate misses the leg");
  return out;
}

template <class Cat>
std::vector<SigmaCertificate<Cat>> SigmaOre<Cat>::advance(const Cert& c) const {
  std::vector<Cert> out;
  for (const auto& g : e_->pushout_moves(c.map.target())) {
    if (cat().is_zero(g.attach)) continue;  // split moves only add torsion
    auto step = e_->compose(c, e_->certificate(g));
    auto k = e_->kill_torsion(step.map.target());
    if (!SigmaEngine<Cat>::is_trivial(k)) step = e_->compose(step, e_->certificate(k));
    out.push_back(step);
  }
  return out;
}

template <class Cat>
Annihilation<SigmaCertificate<Cat>> SigmaOre<Cat>::annihilate(const Morphism& d) const {
  const Cat& C = cat();
  Annihilation<Cert> out;
  if (C.is_zero(d)) {
    out.verdict = Verdict::Yes;
    out.killer = identity(d.target());
    out.reason = "already zero";
    return out;
  }
  if (e_->oracle().survives(d) == Survival::Survives) {
    out.verdict = Verdict::No;
    out.reason = "oracle: the map survives localisation";
    return out;
  }
  auto k = e_->kill_torsion(d.target());
  Cert start = e_->certificate(k);
  if (C.is_zero(C.compose(d, start.map))) {
    out.verdict = Verdict::Yes;
    out.killer = start;
    out.reason = "image lies in the torsion submodule";
    return out;
  }
  std::vector<Cert> frontier{start};
  const std::size_t width = 32;
  for (int level = 0; level < e_->bounds().depth && !frontier.empty(); ++level) {
    std::vector<Cert> next;
    for (const auto& c : frontier)
      for (auto& step : advance(c)) {
        if (C.is_zero(C.compose(d, step.map))) {
          out.verdict = Verdict::Yes;
          out.killer = step;
          out.reason = "killed after a good pushout";
          return out;
        }
        if (next.size() < width) next.push_back(std::move(step));
      }
    frontier = std::move(next);
  }
  out.reason = "no killing map within bounds";
  return out;
}

template <class Cat>
std::vector<SigmaCertificate<Cat>> SigmaOre<Cat>::denominators(const Module& n) const {
  const Cat& C = cat();
  const std::size_t limit = 64;
  std::vector<Cert> out{identity(n)};
  auto fresh = [&](const Cert& c) {
    for (const auto& o : out)
      if (C.same_module(o.map.target(), c.map.target()) && C.equal(o.map, c.map)) return false;
    return true;
  };
  auto k = e_->kill_torsion(n);
  if (!SigmaEngine<Cat>::is_trivial(k)) out.push_back(e_->certificate(k));
  std::vector<Cert> frontier{out.back()};
  for (int level = 0; level < e_->bounds().depth && out.size() < limit; ++level) {
    std::vector<Cert> next;
    for (const auto& c : frontier)
      for (auto& step : advance(c)) {
        if (out.size() >= limit) break;
        if (!fresh(step)) continue;
        out.push_back(step);
        next.push_back(step);
      }
    frontier = std::move(next);
  }
  return out;
}

// ------------------------------------------------------------------ calculus

template <class Cat, class Set>
Fraction<Cat, typename Set::Cert> OreCalculus<Cat, Set>::make(const Morphism& numerator,
                                                              const Cert& denominator) const {
  const auto& s = Set::map_of(denominator);
  if (!cat().same_module(numerator.target(), s.target()))
    throw ObjectMismatch("numerator and denominator have different targets");
  return {numerator, s, denominator};
}

template <class Cat, class Set>
bool OreCalculus<Cat, Set>::verify(const Frac& x) const {
  return set_->verify(x.cert) && cat().equal(Set::map_of(x.cert), x.denominator) &&
         cat().same_module(x.numerator.target(), x.denominator.target());
}

template <class Cat, class Set>
bool OreCalculus<Cat, Set>::verify_equality(const Frac& x, const Frac& y, const Cert& u,
                                            const Cert& v) const {
  const Cat& C = cat();
  try {
    if (!verify(x) || !verify(y) || !set_->verify(u) || !set_->verify(v)) return false;
    const auto& um = Set::map_of(u);
    const auto& vm = Set::map_of(v);
    return C.equal(C.compose(x.numerator, um), C.compose(y.numerator, vm)) &&
           C.equal(C.compose(x.denominator, um), C.compose(y.denominator, vm));
  } catch (const Error&) {
    return false;
  }
}

template <class Cat, class Set>
FractionEquality<typename Set::Cert> OreCalculus<Cat, Set>::equal(const Frac& x,
                                                                 const Frac& y) const {
  const Cat& C = cat();
  if (!C.same_module(source(x), source(y)) || !C.same_module(target(x), target(y)))
    throw ObjectMismatch("comparing fractions between different objects");
  Equality out;
  std::optional<Cert> u, v;
  Morphism d = C.zero_map(source(x), x.denominator.target());
  if (C.same_module(x.denominator.target(), y.denominator.target()) &&
      C.equal(x.denominator, y.denominator)) {
    u = set_->identity(x.denominator.target());
    v = u;
    d = C.add(x.numerator, C.negate(y.numerator));
  } else {
    auto po = pushout(C, x.denominator, y.denominator);
    u = set_->leg(y.cert, x.denominator, po, LegSide::Second);
    auto av = set_->leg(x.cert, y.denominator, po, LegSide::First);
    v = set_->then_iso(av, C.negate(C.identity(po.object)));
    d = C.add(C.compose(x.numerator, Set::map_of(*u)),
              C.negate(C.compose(y.numerator, Set::map_of(*v))));
  }
  auto ann = set_->annihilate(d);
  out.verdict = ann.verdict == Verdict::Yes ? Verdict::Yes
                : ann.verdict == Verdict::No ? Verdict::No
                                             : Verdict::Unknown;
  out.reason = ann.reason;
  if (ann.verdict == Verdict::Yes) {
    out.u = set_->compose(*u, *ann.killer);
    out.v = set_->compose(*v, *ann.killer);
    if (!verify_equality(x, y, *out.u, *out.v))
      throw VerificationFailure("equality witness does not replay");
  }
  return out;
}

template <class Cat, class Set>
Annihilation<typename Set::Cert> OreCalculus<Cat, Set>::is_zero(const Frac& x) const {
  return set_->annihilate(x.numerator);
}

template <class Cat, class Set>
Fraction<Cat, typename Set::Cert> OreCalculus<Cat, Set>::compose(const Frac& x,
                                                                 const Frac& y) const {
  const Cat& C = cat();
  if (!C.same_module(target(x), source(y)))
    throw ObjectMismatch("composition of non-composable fractions");
  // s^-1 b = -a' b'^-1 for the pushout of b and s
  auto po = pushout(C, y.numerator, x.denominator);
  auto b_leg = set_->leg(x.cert, y.numerator, po, LegSide::Second);
  auto numerator = C.negate(C.compose(x.numerator, po.a_prime));
  auto cert = set_->compose(y.cert, b_leg);
  return make(numerator, cert);
}

template <class Cat, class Set>
Fraction<Cat, typename Set::Cert> OreCalculus<Cat, Set>::add(const Frac& x, const Frac& y) const {
  const Cat& C = cat();
  if (!C.same_module(source(x), source(y)) || !C.same_module(target(x), target(y)))
    throw ObjectMismatch("adding fractions between different objects");
  auto po = pushout(C, x.denominator, y.denominator);
  auto u = set_->leg(y.cert, x.denominator, po, LegSide::Second);
  auto av = set_->leg(x.cert, y.denominator, po, LegSide::First);
  auto v = set_->then_iso(av, C.negate(C.identity(po.object)));
  auto numerator = C.add(C.compose(x.numerator, Set::map_of(u)),
                         C.compose(y.numerator, Set::map_of(v)));
  return make(numerator, set_->compose(x.cert, u));
}

template <class Cat, class Set>
std::optional<Fraction<Cat, typename Set::Cert>> OreCalculus<Cat, Set>::inverse(
    const Frac& x) const {
  auto c = set_->certify(x.numerator);
  if (!c) return std::nullopt;
  return make(x.denominator, *c);
}

template <class Cat, class Set>
LocalCokernel<Cat, typename Set::Cert> OreCalculus<Cat, Set>::cokernel(const Frac& x) const {
  auto ck = cat().cokernel(x.numerator);
  return {ck.object, of(cat().compose(x.denominator, ck.map))};
}

template <class Cat, class Set>
CokernelComparison<Cat, typename Set::Cert> OreCalculus<Cat, Set>::compare_cokernels(
    const Morphism& f, const Cert& s) const {
  const Cat& C = cat();
  const auto& sm = Set::map_of(s);
  auto x = make(C.compose(f, sm), s);
  auto loc = cokernel(x);
  auto qf = C.cokernel(f).map;
  auto qx = C.cokernel(x.numerator).map;
  auto phi0 = C.extend(qf, C.compose(sm, qx));
  if (!phi0) throw VerificationFailure("cokernel comparison does not factor");
  auto forward = of(*phi0);
  auto po = pushout(C, sm, qf);
  auto a_leg = set_->leg(s, qf, po, LegSide::First);
  auto psi0 = C.extend(qx, C.negate(po.b_prime));
  if (!psi0) throw VerificationFailure("inverse comparison does not factor");
  auto backward = make(*psi0, a_leg);
  CokernelComparison<Cat, Cert> out{loc, forward, backward, {}, {}, {}};
  out.there_and_back = equal(compose(forward, backward), identity(qf.target()));
  out.back_and_there = equal(compose(backward, forward), identity(loc.object));
  out.maps_agree = equal(compose(of(qf), forward), loc.map);
  return out;
}

template <class Cat, class Set>
HomEnumeration<Cat, typename Set::Cert> OreCalculus<Cat, Set>::enumerate(const Module& m,
                                                                         const Module& n,
                                                                         int window,
                                                                         std::size_t cap) const {
  const Cat& C = cat();
  HomEnumeration<Cat, Cert> out;
  auto dens = set_->denominators(n);
  out.denominators = dens.size();
  std::size_t best = 0;
  for (const auto& t : dens) {
    std::size_t local = 0;
    std::vector<Frac> seen_here;
    for (const auto& a : C.hom_elements(m, Set::map_of(t).target(), window, cap)) {
      if (out.fractions >= cap) break;
      ++out.fractions;
      auto x = make(a, t);
      bool here = false;
      for (const auto& y : seen_here)
        if (equal(x, y).verdict == Verdict::Yes) {
          here = true;
          break;
        }
      if (!here) {
        seen_here.push_back(x);
        ++local;
      }
      bool known = false;
      for (const auto& y : out.classes)
        if (equal(x, y).verdict == Verdict::Yes) {
          known = true;
          break;
        }
      if (!known) out.classes.push_back(x);
    }
    best = std::max(best, local);
  }
  if constexpr (requires { C.field().characteristic(); }) {
    const std::uint64_t p = C.field().characteristic();
    std::uint64_t q = 1;
    std::size_t k = 0;
    while (q < best) {
      q *= p;
      ++k;
    }
    if (q == best && out.classes.size() == best) out.dimension = k;
  }
  return out;
}

}  // namespace uloc
