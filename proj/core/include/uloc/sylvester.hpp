#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uloc/category.hpp"
#include "uloc/error.hpp"
#include "uloc/euclidean.hpp"
#include "uloc/ore.hpp"
#include "uloc/representation.hpp"

namespace uloc {

template <class Cat>
struct RankFunction {
  std::string name;
  std::function<long(const typename Cat::Module&)> eval;
  std::optional<long> residue_size;  // order of the expected division ring when finite

  long operator()(const typename Cat::Module& m) const { return eval(m); }
};

// Dimension of M/qM over R/q: free rank plus invariant factors divisible by q.
template <class Ring>
RankFunction<EuclideanCategory<Ring>> fibre_rank(const EuclideanCategory<Ring>& C,
                                                  const typename Ring::value_type& q,
                                                  std::optional<long> residue_size = std::nullopt) {
  const Ring R = C.ring();
  return {"fibre rank at " + R.to_string(q),
          [R, q](const EuclideanModule<Ring>& m) {
            long r = static_cast<long>(m.free_rank());
            for (const auto& d : m.factors())
              if (R.divides(q, d)) ++r;
            return r;
          },
          residue_size};
}

inline RankFunction<IntegerCategory> rank_mod_p(const IntegerCategory& C, long p) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw NotPrime(std::to_string(p));
  auto r = fibre_rank(C, BigInt(p), p);
  r.name = "p:" + std::to_string(p);
  return r;
}

template <class Ring>
RankFunction<EuclideanCategory<Ring>> rational_rank(const EuclideanCategory<Ring>&) {
  return {"rational", [](const EuclideanModule<Ring>& m) { return static_cast<long>(m.free_rank()); },
          std::nullopt};
}

// Not a rank function: canonical forms merge coprime cyclic summands, so it is
// not additive.
template <class Ring>
RankFunction<EuclideanCategory<Ring>> generator_count(const EuclideanCategory<Ring>&) {
  return {"generators", [](const EuclideanModule<Ring>& m) { return static_cast<long>(m.generators()); },
          std::nullopt};
}

inline RankFunction<QuiverCategory> vertex_rank(const QuiverCategory& C, std::vector<long> weights) {
  if (weights.size() != C.shape().vertex_count())
    throw ShapeMismatch("one weight per vertex expected");
  std::string name = "vertex:";
  for (std::size_t v = 0; v < weights.size(); ++v) name += (v ? "," : "") + std::to_string(weights[v]);
  return {name,
          [weights](const Representation& m) {
            long r = 0;
            for (std::size_t v = 0; v < weights.size(); ++v) r += weights[v] * static_cast<long>(m.dim(v));
            return r;
          },
          std::nullopt};
}

template <class Cat>
struct FullMapCertificate {
  typename Cat::Morphism map;
  long rank = 0;
  long source_rank = 0;
  long target_rank = 0;
  bool full = false;
};

template <class Cat>
FullMapCertificate<Cat> rank_of_map(const Cat& C, const typename Cat::Morphism& f,
                                    const RankFunction<Cat>& rho) {
  FullMapCertificate<Cat> out{f, 0, rho(f.source()), rho(f.target()), false};
  out.rank = out.target_rank - rho(C.cokernel(f).object);
  out.full = out.rank == out.source_rank && out.rank == out.target_rank;
  return out;
}

template <class Cat>
struct RankCondition {
  std::string name;
  Verdict verdict = Verdict::Yes;
  std::optional<typename Cat::Morphism> witness;
  std::string detail;
};

template <class Cat>
struct SevereReport {
  std::vector<RankCondition<Cat>> conditions;  // additivity, exactness, isos, composition, pushout, revenge
  std::size_t full_maps = 0;
  Verdict verdict() const {
    for (const auto& c : conditions)
      if (c.verdict == Verdict::No) return Verdict::No;
    return Verdict::Yes;
  }
  const RankCondition<Cat>* find(const std::string& name) const {
    for (const auto& c : conditions)
      if (c.name == name) return &c;
    return nullptr;
  }
};

template <class Cat>
SevereReport<Cat> full_set_severe_check(const Cat& C, const RankFunction<Cat>& rho,
                                        const std::vector<typename Cat::Morphism>& corpus) {
  using Morphism = typename Cat::Morphism;
  SevereReport<Cat> out;
  auto fail = [](RankCondition<Cat>& c, const Morphism& w, std::string why) {
    if (c.verdict == Verdict::No) return;
    c.verdict = Verdict::No;
    c.witness = w;
    c.detail = std::move(why);
  };
  RankCondition<Cat> additive{"additivity"}, exact{"exactness"}, isos{"isomorphisms"},
      comp{"composition"}, push{"pushout"}, rev{"revenge"};

  std::vector<Morphism> full;
  for (const auto& f : corpus) {
    const auto& a = f.source();
    const auto& b = f.target();
    auto sum = C.direct_sum({a, b});
    if (rho(sum.object) != rho(a) + rho(b))
      fail(additive, sum.inclusions[0],
           "rank of " + C.describe(sum.object) + " is " + std::to_string(rho(sum.object)) + ", summands give " +
               std::to_string(rho(a) + rho(b)));
    const long rc = rho(C.cokernel(f).object);
    if (!(rc <= rho(b) && rho(b) <= rho(a) + rc)) fail(exact, f, "inequalities fail for the cokernel");
    auto id = rank_of_map(C, C.identity(a), rho);
    if (!id.full) fail(isos, C.identity(a), "identity is not full");
    if (rank_of_map(C, f, rho).full) full.push_back(f);
  }
  out.full_maps = full.size();

  for (const auto& s : full) {
    for (const auto& t : full)
      if (C.same_module(s.target(), t.source()) && !rank_of_map(C, C.compose(s, t), rho).full)
        fail(comp, C.compose(s, t), "composite of full maps is not full");
    for (const auto& g : corpus) {
      if (!C.same_module(g.source(), s.source())) continue;
      auto po = pushout(C, s, g);
      if (!rank_of_map(C, po.a_prime, rho).full) fail(push, po.a_prime, "pushout leg is not full");
    }
    for (const auto& d : corpus) {
      if (!C.same_module(d.source(), s.target()) || !C.is_zero(C.compose(s, d))) continue;
      auto q = C.cokernel(d).map;
      if (!rank_of_map(C, q, rho).full) fail(rev, d, "cokernel of a killed map is not full");
    }
  }
  out.conditions = {additive, exact, isos, comp, push, rev};
  return out;
}

// A full map from a free module of rank rho(M) onto M, built one rank at a time.
template <class Cat>
typename Cat::Morphism construct_full_map(const Cat& C, const typename Cat::Module& m,
                                          const RankFunction<Cat>& rho, int window = 2,
                                          std::size_t cap = 4096) {
  using Morphism = typename Cat::Morphism;
  if (rho(C.ring_module()) != 1) throw BoundViolation(rho.name + " is not normalised on the ring");
  const long k = rho(m);
  if (k == 0) return C.zero_map(C.zero_module(), m);
  std::optional<Morphism> phi;
  for (const auto& e : C.element_maps(m))
    if (rank_of_map(C, e, rho).rank == 1) {
      phi = e;
      break;
    }
  if (!phi)
    for (const auto& e : C.hom_elements(C.ring_module(), m, window, cap))
      if (rank_of_map(C, e, rho).rank == 1) {
        phi = e;
        break;
      }
  if (!phi) throw VerificationFailure("no rank-one element in " + C.describe(m));
  auto q = C.cokernel(*phi).map;
  auto rest = construct_full_map(C, q.target(), rho, window, cap);
  auto lifted = C.lift(rest, q);
  if (!lifted) throw VerificationFailure("full map of the cokernel does not lift");
  auto src = C.direct_sum({phi->source(), rest.source()});
  auto out = column(C, src, std::vector<Morphism>{*phi, *lifted}, m);
  if (!rank_of_map(C, out, rho).full) throw VerificationFailure("assembled map is not full");
  return out;
}

// Right Ore set of rho-full maps, in the shape expected by OreCalculus.
template <class Cat>
class FullMapOre {
 public:
  using Module = typename Cat::Module;
  using Morphism = typename Cat::Morphism;
  using Cert = FullMapCertificate<Cat>;
  using PO = Pushout<Module, Morphism>;

  FullMapOre(const Cat& cat, RankFunction<Cat> rho, std::vector<Module> targets, int window = 1,
             std::size_t limit = 64)
      : cat_(&cat), rho_(std::move(rho)), targets_(std::move(targets)), window_(window), limit_(limit) {}

  const Cat& cat() const { return *cat_; }
  const RankFunction<Cat>& rho() const { return rho_; }
  static const Morphism& map_of(const Cert& c) { return c.map; }

  Cert identity(const Module& m) const { return rank_of_map(*cat_, cat_->identity(m), rho_); }
  Cert compose(const Cert& a, const Cert& b) const { return checked(cat_->compose(a.map, b.map)); }
  Cert then_iso(const Cert& c, const Morphism& iso) const { return checked(cat_->compose(c.map, iso)); }
  bool verify(const Cert& c) const {
    auto r = rank_of_map(*cat_, c.map, rho_);
    return r.full && r.rank == c.rank && r.source_rank == c.source_rank && r.target_rank == c.target_rank;
  }
  std::optional<Cert> certify(const Morphism& s) const {
    auto c = rank_of_map(*cat_, s, rho_);
    if (!c.full) return std::nullopt;
    return c;
  }
  Cert leg(const Cert&, const Morphism&, const PO& po, LegSide side) const {
    return checked(side == LegSide::First ? po.a_prime : po.b_prime);
  }

  Annihilation<Cert> annihilate(const Morphism& d) const {
    Annihilation<Cert> out;
    if (cat_->is_zero(d)) {
      out.verdict = Verdict::Yes;
      out.killer = identity(d.target());
      out.reason = "already zero";
      return out;
    }
    if (rank_of_map(*cat_, d, rho_).rank != 0) {
      out.verdict = Verdict::No;
      out.reason = "map has positive rank";
      return out;
    }
    out.verdict = Verdict::Yes;
    out.killer = checked(cat_->cokernel(d).map);
    out.reason = "cokernel of a rank-zero map";
    return out;
  }

  std::vector<Cert> denominators(const Module& n) const {
    std::vector<Cert> out{identity(n)};
    for (const auto& t : targets_)
      for (const auto& f : cat_->hom_elements(n, t, window_, 4096)) {
        if (out.size() >= limit_) return out;
        auto c = certify(f);
        if (!c) continue;
        bool fresh = true;
        for (const auto& o : out)
          if (cat_->same_module(o.map.target(), f.target()) && cat_->equal(o.map, f)) fresh = false;
        if (fresh) out.push_back(*c);
      }
    return out;
  }

 private:
  Cert checked(const Morphism& f) const {
    auto c = rank_of_map(*cat_, f, rho_);
    if (!c.full) throw VerificationFailure("expected a full map: " + cat_->describe(f));
    return c;
  }

  const Cat* cat_;
  RankFunction<Cat> rho_;
  std::vector<Module> targets_;
  int window_;
  std::size_t limit_;
};

template <class Cat>
struct ModuleProbe {
  typename Cat::Module module;
  long rank = 0;
  Verdict full_map_inverted = Verdict::Unknown;
  std::optional<std::size_t> hom_classes;  // |Hom([R], [M])| when counted
};

template <class Cat>
struct DivisionProbe {
  std::size_t classes = 0;
  std::size_t fractions = 0;
  Verdict nonzero_invertible = Verdict::Yes;
  Verdict zero_unique = Verdict::Yes;
  Verdict residue_matches = Verdict::Unknown;
  std::vector<Fraction<Cat, FullMapCertificate<Cat>>> elements;
  std::vector<ModuleProbe<Cat>> modules;
};

// End([R]) in the category localised at the full maps, checked for inverses,
// and [M] compared with D^rho(M) on the given modules.
template <class Cat>
DivisionProbe<Cat> division_ring_probe(const FullMapOre<Cat>& set, const std::vector<typename Cat::Module>& corpus,
                                       int window, std::size_t cap) {
  const Cat& C = set.cat();
  OreCalculus<Cat, FullMapOre<Cat>> ore(set);
  DivisionProbe<Cat> out;
  const auto R = C.ring_module();
  auto h = ore.enumerate(R, R, window, cap);
  out.classes = h.classes.size();
  out.fractions = h.fractions;
  out.elements = h.classes;
  std::size_t zeros = 0;
  const auto one = ore.identity(R);
  for (const auto& x : h.classes) {
    if (ore.is_zero(x).verdict == Verdict::Yes) {
      ++zeros;
      continue;
    }
    auto inv = ore.inverse(x);
    if (!inv || ore.equal(ore.compose(x, *inv), one).verdict != Verdict::Yes ||
        ore.equal(ore.compose(*inv, x), ore.identity(ore.target(x))).verdict != Verdict::Yes)
      out.nonzero_invertible = Verdict::No;
  }
  if (zeros != 1) out.zero_unique = Verdict::No;
  const auto& rho = set.rho();
  if (rho.residue_size)
    out.residue_matches = static_cast<long>(out.classes) == *rho.residue_size ? Verdict::Yes : Verdict::No;

  for (const auto& m : corpus) {
    ModuleProbe<Cat> p{m, rho(m), Verdict::Unknown, std::nullopt};
    auto phi = construct_full_map(C, m, rho, window, cap);
    auto x = ore.of(phi);
    auto inv = ore.inverse(x);
    if (inv) {
      bool ok = ore.equal(ore.compose(x, *inv), ore.identity(phi.source())).verdict == Verdict::Yes &&
                ore.equal(ore.compose(*inv, x), ore.identity(m)).verdict == Verdict::Yes;
      p.full_map_inverted = ok ? Verdict::Yes : Verdict::No;
    }
    if (rho.residue_size) p.hom_classes = ore.enumerate(R, m, window, cap).classes.size();
    out.modules.push_back(std::move(p));
  }
  return out;
}

}  // namespace uloc
