#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "uloc/category.hpp"

namespace uloc {

struct Bounds {
  int depth = 3;         // triangular nesting, induction rounds, search levels
  int ext_bound = 3;     // longest tower in the extension closure
  int coeff_window = 2;  // off-diagonal and hom coefficients range over -w..w
  int word_length = 6;   // iterations of torsion killing
  std::size_t cap = 4096;
  std::uint64_t seed = 0x5eed;
};

enum class ClosureKind { Lower, Upper, Triangular };

// A map between projectives built from the generators by block-triangular
// gluing. Lower terms are [[first, 0], [h, second]] with h: second.source ->
// first.target; upper terms are [[first, h], [0, second]] with h: first.source
// -> second.target. The trivial term is the zero map 0 -> 0.
template <class Cat>
struct TriangularTerm {
  using Morphism = typename Cat::Morphism;
  enum class Kind { Trivial, Generator, Lower, Upper };

  Kind kind;
  std::size_t generator;
  std::shared_ptr<const TriangularTerm> first;
  std::shared_ptr<const TriangularTerm> second;
  std::optional<Morphism> h;
  Morphism value;
};

template <class Cat>
using TermPtr = std::shared_ptr<const TriangularTerm<Cat>>;

template <class Cat>
struct SigmaSpec {
  std::vector<typename Cat::Morphism> generators;
  bool all_injective = true;
  std::vector<typename Cat::Module> cokernels;
};

// A module of the extension closure, presented as the cokernel of tau. Items
// above length one record the tower step that produced them.
template <class Cat>
struct ClosureItem {
  TermPtr<Cat> tau;
  typename Cat::Module object;
  typename Cat::Morphism projection;  // tau target -> object
  int length;
  int parent;
  std::size_t generator;
  std::optional<typename Cat::Morphism> ext_class;
};

// map = a' . theta where a' is the pushout of tau along attach.
template <class Cat>
struct GoodPushoutWitness {
  TermPtr<Cat> tau;
  typename Cat::Morphism attach;
  typename Cat::Morphism theta;
  typename Cat::Morphism map;
};

// map = coker(a) . theta where tau . a = 0.
template <class Cat>
struct GoodSurjectionWitness {
  TermPtr<Cat> tau;
  typename Cat::Morphism a;
  typename Cat::Morphism theta;
  typename Cat::Morphism map;
};

// map = t.map . u.map
template <class Cat>
struct SigmaCertificate {
  GoodPushoutWitness<Cat> t;
  GoodSurjectionWitness<Cat> u;
  typename Cat::Morphism map;
};

template <class W>
struct Judgement {
  Verdict verdict = Verdict::Unknown;
  std::optional<W> witness;
  std::string reason;
};

template <class Cat>
struct MemberResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<SigmaCertificate<Cat>> certificate;
  std::string reason;
  bool oracle_refutes = false;
};

template <class Cat>
using WordStep = std::variant<GoodPushoutWitness<Cat>, GoodSurjectionWitness<Cat>,
                              SigmaCertificate<Cat>>;

// Images of closure modules in a module, recorded piece by piece.
template <class Cat>
struct Trace {
  typename Cat::Morphism inclusion;
  std::vector<std::pair<std::size_t, typename Cat::Morphism>> pieces;  // item, item -> M
};

template <class Cat>
class SigmaEngine {
 public:
  using Module = typename Cat::Module;
  using Morphism = typename Cat::Morphism;
  using Term = TriangularTerm<Cat>;
  using Ptr = TermPtr<Cat>;
  using GP = GoodPushoutWitness<Cat>;
  using GS = GoodSurjectionWitness<Cat>;
  using Cert = SigmaCertificate<Cat>;
  using Item = ClosureItem<Cat>;

  SigmaEngine(const Cat& cat, std::vector<Morphism> generators, Bounds bounds = {});

  const Cat& cat() const { return *cat_; }
  const SigmaSpec<Cat>& spec() const { return spec_; }
  const Bounds& bounds() const { return bounds_; }
  const typename Cat::Oracle& oracle() const { return cache_->oracle; }

  // ---- triangular terms
  Ptr trivial_term() const;
  Ptr generator_term(std::size_t i) const;
  Ptr lower(const Ptr& first, const Ptr& second, const Morphism& h) const;
  Ptr upper(const Ptr& first, const Ptr& second, const Morphism& h) const;
  bool verify_term(const Term& t) const;
  std::vector<Ptr> triangular_closure(ClosureKind kind, int depth) const;

  // ---- extension closure
  std::vector<Item> extension_closure(int length_bound) const;
  const std::vector<Item>& closure() const;  // at bounds().ext_bound, cached
  Trace<Cat> trace(const Module& m) const;

  // ---- good maps
  Judgement<GP> is_good_pushout(const Morphism& f) const;
  Judgement<GS> is_good_surjection(const Morphism& f) const;
  bool verify(const GP& w) const;
  bool verify(const GS& w) const;
  bool verify(const Cert& c) const;

  GP trivial_pushout(const Morphism& iso) const;
  GS trivial_surjection(const Morphism& iso) const;
  static bool is_trivial(const GP& w) { return w.tau->kind == Term::Kind::Trivial; }
  static bool is_trivial(const GS& w) { return w.tau->kind == Term::Kind::Trivial; }

  Cert identity(const Module& m) const;
  Cert certificate(const GP& w) const;
  Cert certificate(const GS& w) const;
  GP merge_pushouts(const GP& first, const GP& second) const;
  GS merge_surjections(const GS& first, const GS& second) const;
  std::pair<GP, GS> swap(const GS& u, const GP& t) const;
  Cert compose(const Cert& first, const Cert& second) const;
  Cert then_iso(const Cert& c, const Morphism& iso) const;
  // The cokernel of d as a good surjection, given s in sigma with s.d = 0.
  GS revenge(const Cert& s, const Morphism& d) const;
  Cert factor(const std::vector<WordStep<Cat>>& word) const;
  MemberResult<Cat> member(const Morphism& s) const;

  // ---- moves used by the Ore calculus and induction
  // The surjection killing the iterated closure trace; trivial if there is none.
  GS kill_torsion(const Module& m) const;
  // One good pushout per closure item and Ext class, the split class included.
  std::vector<GP> pushout_moves(const Module& m) const;

 private:
  struct Cache {
    explicit Cache(typename Cat::Oracle o) : oracle(std::move(o)) {}
    typename Cat::Oracle oracle;
    std::once_flag once;
    std::vector<Item> items;
  };

  Morphism coker_leg(const GP& w) const;  // tau target -> w.map target
  GS surjection_from_pieces(const std::vector<std::pair<std::size_t, Morphism>>& pieces,
                            const Morphism& inclusion, const Morphism& map) const;
  GP check(GP w) const;
  GS check(GS w) const;
  Cert check(Cert c) const;
  std::optional<Cert> search_member(const Morphism& s) const;

  const Cat* cat_;
  SigmaSpec<Cat> spec_;
  Bounds bounds_;
  std::shared_ptr<Cache> cache_;
};

// ------------------------------------------------------------------ terms

template <class Cat>
SigmaEngine<Cat>::SigmaEngine(const Cat& cat, std::vector<Morphism> generators, Bounds bounds)
    : cat_(&cat), bounds_(bounds) {
  for (const auto& g : generators) {
    if (!cat.is_projective(g.source()) || !cat.is_projective(g.target()))
      throw ObjectMismatch("generator " + cat.describe(g) + " is not a map between projectives");
    if (!cat.is_injective(g)) spec_.all_injective = false;
    spec_.cokernels.push_back(cat.cokernel(g).object);
  }
  spec_.generators = std::move(generators);
  cache_ = std::make_shared<Cache>(cat.make_oracle(spec_.generators));
}

template <class Cat>
TermPtr<Cat> SigmaEngine<Cat>::trivial_term() const {
  auto z = cat_->zero_module();
  return std::make_shared<const Term>(
      Term{Term::Kind::Trivial, 0, nullptr, nullptr, std::nullopt, cat_->zero_map(z, z)});
}

template <class Cat>
TermPtr<Cat> SigmaEngine<Cat>::generator_term(std::size_t i) const {
  if (i >= spec_.generators.size())
    throw ReferenceError("generator index " + std::to_string(i) + " out of range");
  return std::make_shared<const Term>(
      Term{Term::Kind::Generator, i, nullptr, nullptr, std::nullopt, spec_.generators[i]});
}

template <class Cat>
TermPtr<Cat> SigmaEngine<Cat>::lower(const Ptr& first, const Ptr& second, const Morphism& h) const {
  if (!cat_->same_module(h.source(), second->value.source()) ||
      !cat_->same_module(h.target(), first->value.target()))
    throw ShapeMismatch("lower off-diagonal block has the wrong shape");
  auto src = cat_->direct_sum({first->value.source(), second->value.source()});
  auto tgt = cat_->direct_sum({first->value.target(), second->value.target()});
  auto v = block(*cat_, src, tgt, {{first->value, std::nullopt}, {h, second->value}});
  return std::make_shared<const Term>(Term{Term::Kind::Lower, 0, first, second, h, v});
}

template <class Cat>
TermPtr<Cat> SigmaEngine<Cat>::upper(const Ptr& first, const Ptr& second, const Morphism& h) const {
  if (!cat_->same_module(h.source(), first->value.source()) ||
      !cat_->same_module(h.target(), second->value.target()))
    throw ShapeMismatch("upper off-diagonal block has the wrong shape");
  auto src = cat_->direct_sum({first->value.source(), second->value.source()});
  auto tgt = cat_->direct_sum({first->value.target(), second->value.target()});
  auto v = block(*cat_, src, tgt, {{first->value, h}, {std::nullopt, second->value}});
  return std::make_shared<const Term>(Term{Term::Kind::Upper, 0, first, second, h, v});
}

template <class Cat>
bool SigmaEngine<Cat>::verify_term(const Term& t) const {
  switch (t.kind) {
    case Term::Kind::Trivial:
      return cat_->is_zero_module(t.value.source()) && cat_->is_zero_module(t.value.target());
    case Term::Kind::Generator:
      return t.generator < spec_.generators.size() &&
             cat_->same_module(t.value.source(), spec_.generators[t.generator].source()) &&
             cat_->same_module(t.value.target(), spec_.generators[t.generator].target()) &&
             cat_->equal(t.value, spec_.generators[t.generator]);
    default: {
      if (!t.first || !t.second || !t.h) return false;
      if (!verify_term(*t.first) || !verify_term(*t.second)) return false;
      try {
        auto again = t.kind == Term::Kind::Lower ? lower(t.first, t.second, *t.h)
                                                 : upper(t.first, t.second, *t.h);
        return cat_->same_module(again->value.source(), t.value.source()) &&
               cat_->same_module(again->value.target(), t.value.target()) &&
               cat_->equal(again->value, t.value);
      } catch (const Error&) {
        return false;
      }
    }
  }
}

template <class Cat>
std::vector<TermPtr<Cat>> SigmaEngine<Cat>::triangular_closure(ClosureKind kind, int depth) const {
  std::vector<Ptr> terms;
  for (std::size_t i = 0; i < spec_.generators.size(); ++i) terms.push_back(generator_term(i));
  for (int level = 0; level < depth && terms.size() < bounds_.cap; ++level) {
    const std::size_t existing = terms.size();
    for (std::size_t i = 0; i < existing && terms.size() < bounds_.cap; ++i)
      for (std::size_t j = 0; j < existing && terms.size() < bounds_.cap; ++j) {
        const Ptr a = terms[i];
        const Ptr b = terms[j];
        if (kind != ClosureKind::Upper)
          for (const auto& h : cat_->hom_elements(b->value.source(), a->value.target(),
                                                  bounds_.coeff_window, bounds_.cap)) {
            if (terms.size() >= bounds_.cap) break;
            terms.push_back(lower(a, b, h));
          }
        if (kind != ClosureKind::Lower)
          for (const auto& h : cat_->hom_elements(a->value.source(), b->value.target(),
                                                  bounds_.coeff_window, bounds_.cap)) {
            if (terms.size() >= bounds_.cap) break;
            terms.push_back(upper(a, b, h));
          }
      }
  }
  return terms;
}

// ------------------------------------------------------------------ closure

template <class Cat>
std::vector<ClosureItem<Cat>> SigmaEngine<Cat>::extension_closure(int length_bound) const {
  std::vector<Item> items;
  auto known = [&](const Module& m) {
    for (const auto& it : items)
      if (cat_->iso_test(it.object, m).verdict == Verdict::Yes) return true;
    return false;
  };
  std::size_t level_begin = 0;
  for (std::size_t i = 0; i < spec_.generators.size() && length_bound >= 1; ++i) {
    auto ck = cat_->cokernel(spec_.generators[i]);
    if (cat_->is_zero_module(ck.object) || known(ck.object)) continue;
    items.push_back({generator_term(i), ck.object, ck.map, 1, -1, i, std::nullopt});
  }
  for (int len = 2; len <= length_bound && items.size() < bounds_.cap; ++len) {
    const std::size_t level_end = items.size();
    for (std::size_t p = level_begin; p < level_end; ++p)
      for (std::size_t i = 0; i < spec_.generators.size(); ++i) {
        const auto& beta = spec_.generators[i];
        if (cat_->is_zero_module(spec_.cokernels[i])) continue;
        auto reps = cat_->ext_reps(beta, items[p].object, bounds_.coeff_window, bounds_.cap);
        for (const auto& j : reps.reps) {
          if (items.size() >= bounds_.cap) break;
          auto h = cat_->lift(j, items[p].projection);
          if (!h) throw VerificationFailure("extension class does not lift through a projective");
          auto tau = lower(items[p].tau, generator_term(i), *h);
          auto ck = cat_->cokernel(tau->value);
          if (known(ck.object)) continue;
          items.push_back({tau, ck.object, ck.map, len, static_cast<int>(p), i, j});
        }
      }
    level_begin = level_end;
  }
  return items;
}

template <class Cat>
const std::vector<ClosureItem<Cat>>& SigmaEngine<Cat>::closure() const {
  std::call_once(cache_->once, [&] { cache_->items = extension_closure(bounds_.ext_bound); });
  return cache_->items;
}

template <class Cat>
Trace<Cat> SigmaEngine<Cat>::trace(const Module& m) const {
  const auto& items = closure();
  std::vector<Module> parts;
  std::vector<Morphism> maps;
  Trace<Cat> out{cat_->zero_map(cat_->zero_module(), m), {}};
  std::optional<Morphism> mono;
  for (std::size_t k = 0; k < items.size(); ++k)
    for (const auto& g : cat_->hom(items[k].object, m).generators) {
      if (cat_->is_zero(g)) continue;
      if (mono && cat_->lift(g, *mono)) continue;
      parts.push_back(g.source());
      maps.push_back(g);
      out.pieces.push_back({k, g});
      auto sum = cat_->direct_sum(parts);
      mono = cat_->image(column(*cat_, sum, maps, m)).mono;
    }
  if (mono) out.inclusion = *mono;
  return out;
}

// ------------------------------------------------------------------ witnesses

template <class Cat>
typename Cat::Morphism SigmaEngine<Cat>::coker_leg(const GP& w) const {
  auto po = pushout(*cat_, w.tau->value, w.attach);
  return cat_->compose(po.b_prime, w.theta);
}

template <class Cat>
bool SigmaEngine<Cat>::verify(const GP& w) const {
  try {
    if (!verify_term(*w.tau)) return false;
    auto po = pushout(*cat_, w.tau->value, w.attach);
    if (!cat_->same_module(w.theta.source(), po.object)) return false;
    if (!is_iso(*cat_, w.theta)) return false;
    auto m = cat_->compose(po.a_prime, w.theta);
    return cat_->same_module(m.target(), w.map.target()) && cat_->equal(m, w.map);
  } catch (const Error&) {
    return false;
  }
}

template <class Cat>
bool SigmaEngine<Cat>::verify(const GS& w) const {
  try {
    if (!verify_term(*w.tau)) return false;
    if (!cat_->same_module(w.tau->value.target(), w.a.source())) return false;
    if (!cat_->is_zero(cat_->compose(w.tau->value, w.a))) return false;
    auto ck = cat_->cokernel(w.a);
    if (!cat_->same_module(w.theta.source(), ck.object)) return false;
    if (!is_iso(*cat_, w.theta)) return false;
    auto m = cat_->compose(ck.map, w.theta);
    return cat_->same_module(m.target(), w.map.target()) && cat_->equal(m, w.map);
  } catch (const Error&) {
    return false;
  }
}

template <class Cat>
bool SigmaEngine<Cat>::verify(const Cert& c) const {
  if (!verify(c.t) || !verify(c.u)) return false;
  try {
    auto m = cat_->compose(c.t.map, c.u.map);
    return cat_->same_module(m.source(), c.map.source()) &&
           cat_->same_module(m.target(), c.map.target()) && cat_->equal(m, c.map);
  } catch (const Error&) {
    return false;
  }
}

template <class Cat>
GoodPushoutWitness<Cat> SigmaEngine<Cat>::check(GP w) const {
  if (!verify(w)) throw VerificationFailure("constructed good pushout does not replay");
  return w;
}

template <class Cat>
GoodSurjectionWitness<Cat> SigmaEngine<Cat>::check(GS w) const {
  if (!verify(w)) throw VerificationFailure("constructed good surjection does not replay");
  return w;
}

template <class Cat>
SigmaCertificate<Cat> SigmaEngine<Cat>::check(Cert c) const {
  if (!verify(c)) throw VerificationFailure("constructed certificate does not replay");
  return c;
}

template <class Cat>
GoodPushoutWitness<Cat> SigmaEngine<Cat>::trivial_pushout(const Morphism& iso) const {
  auto tau = trivial_term();
  auto attach = cat_->zero_map(cat_->zero_module(), iso.source());
  auto po = pushout(*cat_, tau->value, attach);
  auto theta = induced(*cat_, po, cat_->zero_map(tau->value.target(), iso.target()), iso);
  return check(GP{tau, attach, theta, iso});
}

template <class Cat>
GoodSurjectionWitness<Cat> SigmaEngine<Cat>::trivial_surjection(const Morphism& iso) const {
  auto tau = trivial_term();
  auto a = cat_->zero_map(cat_->zero_module(), iso.source());
  auto theta = cat_->extend(cat_->cokernel(a).map, iso);
  if (!theta) throw VerificationFailure("identity does not factor through its cokernel");
  return check(GS{tau, a, *theta, iso});
}

template <class Cat>
SigmaCertificate<Cat> SigmaEngine<Cat>::identity(const Module& m) const {
  auto id = cat_->identity(m);
  return Cert{trivial_pushout(id), trivial_surjection(id), id};
}

template <class Cat>
SigmaCertificate<Cat> SigmaEngine<Cat>::certificate(const GP& w) const {
  return Cert{w, trivial_surjection(cat_->identity(w.map.target())), w.map};
}

template <class Cat>
SigmaCertificate<Cat> SigmaEngine<Cat>::certificate(const GS& w) const {
  return Cert{trivial_pushout(cat_->identity(w.map.source())), w, w.map};
}

template <class Cat>
GoodSurjectionWitness<Cat> SigmaEngine<Cat>::surjection_from_pieces(
    const std::vector<std::pair<std::size_t, Morphism>>& pieces, const Morphism& inclusion,
    const Morphism& map) const {
  const auto& items = closure();
  const Module& m = map.source();
  Ptr tau = trivial_term();
  Morphism a = cat_->zero_map(cat_->zero_module(), m);
  bool first = true;
  for (const auto& [k, g] : pieces) {
    auto piece = cat_->compose(cat_->compose(items[k].projection, g), inclusion);
    if (first) {
      tau = items[k].tau;
      a = piece;
      first = false;
      continue;
    }
    auto next = lower(tau, items[k].tau,
                      cat_->zero_map(items[k].tau->value.source(), tau->value.target()));
    auto sum = cat_->direct_sum({tau->value.target(), items[k].tau->value.target()});
    a = column(*cat_, sum, {a, piece}, m);
    tau = next;
  }
  auto theta = cat_->extend(cat_->cokernel(a).map, map);
  if (!theta) throw VerificationFailure("map does not kill the traced submodule");
  return check(GS{tau, a, *theta, map});
}

template <class Cat>
Judgement<GoodPushoutWitness<Cat>> SigmaEngine<Cat>::is_good_pushout(const Morphism& f) const {
  Judgement<GP> out;
  if (is_iso(*cat_, f)) {
    out.verdict = Verdict::Yes;
    out.witness = trivial_pushout(f);
    out.reason = "isomorphism";
    return out;
  }
  auto ck = cat_->cokernel(f);
  if (oracle().survives(ck.object) == Survival::Survives) {
    out.verdict = Verdict::No;
    out.reason = "cokernel " + cat_->describe(ck.object) + " survives localisation";
    return out;
  }
  if (spec_.all_injective) {
    if (!cat_->is_injective(f)) {
      out.verdict = Verdict::No;
      out.reason = "not injective, but every good pushout of injective generators is";
      return out;
    }
    for (const auto& item : closure()) {
      auto iso = cat_->iso_test(item.object, ck.object);
      if (iso.verdict != Verdict::Yes) continue;
      // beta: Q -> N over the cokernel, j: P -> M with j.f = tau.beta
      auto beta = cat_->lift(cat_->compose(item.projection, *iso.iso), ck.map);
      if (!beta) continue;
      auto j = cat_->lift(cat_->compose(item.tau->value, *beta), f);
      if (!j) continue;
      auto attach = cat_->negate(*j);
      auto po = pushout(*cat_, item.tau->value, attach);
      auto theta = induced(*cat_, po, *beta, f);
      GP w{item.tau, attach, theta, f};
      if (!verify(w)) continue;
      out.verdict = Verdict::Yes;
      out.witness = w;
      out.reason = "cokernel " + cat_->describe(ck.object) + " lies in the extension closure";
      return out;
    }
    bool hom_free = true;
    for (const auto& s : spec_.cokernels)
      if (!cat_->hom(s, ck.object).generators.empty()) hom_free = false;
    if (hom_free) {
      out.verdict = Verdict::No;
      out.reason = "no generator cokernel maps to " + cat_->describe(ck.object);
      return out;
    }
    out.reason = "cokernel " + cat_->describe(ck.object) + " not found in the bounded closure";
    return out;
  }
  // non-injective generators: search attaching maps directly
  for (const auto& item : closure()) {
    const auto& tau = item.tau->value;
    for (const auto& j : cat_->hom_elements(tau.source(), f.source(), bounds_.coeff_window,
                                            bounds_.cap)) {
      auto x = cat_->extend(tau, cat_->negate(cat_->compose(j, f)));
      if (!x) continue;
      auto po = pushout(*cat_, tau, j);
      auto theta = induced(*cat_, po, *x, f);
      GP w{item.tau, j, theta, f};
      if (!verify(w)) continue;
      out.verdict = Verdict::Yes;
      out.witness = w;
      out.reason = "attaching map found by search";
      return out;
    }
  }
  out.reason = "no attaching map found within bounds";
  return out;
}

template <class Cat>
Judgement<GoodSurjectionWitness<Cat>> SigmaEngine<Cat>::is_good_surjection(const Morphism& f) const {
  Judgement<GS> out;
  if (!cat_->is_surjective(f)) {
    out.verdict = Verdict::No;
    out.reason = "not surjective";
    return out;
  }
  auto k = cat_->kernel(f);
  if (cat_->is_zero_module(k.object)) {
    out.verdict = Verdict::Yes;
    out.witness = trivial_surjection(f);
    out.reason = "isomorphism";
    return out;
  }
  auto tr = trace(k.object);
  if (!tr.pieces.empty() && cat_->is_surjective(tr.inclusion)) {
    out.verdict = Verdict::Yes;
    out.witness = surjection_from_pieces(tr.pieces, k.map, f);
    out.reason = "kernel " + cat_->describe(k.object) + " is covered by closure modules";
    return out;
  }
  bool hom_free = true;
  for (const auto& s : spec_.cokernels)
    if (!cat_->hom(s, k.object).generators.empty()) hom_free = false;
  if (hom_free) {
    out.verdict = Verdict::No;
    out.reason = "no generator cokernel maps to the kernel " + cat_->describe(k.object);
    return out;
  }
  if (oracle().survives(k.map) == Survival::Survives) {
    out.verdict = Verdict::No;
    out.reason = "kernel inclusion survives localisation";
    return out;
  }
  out.reason = "kernel " + cat_->describe(k.object) + " not covered within bounds";
  return out;
}

// ------------------------------------------------------------------ word reduction

template <class Cat>
GoodPushoutWitness<Cat> SigmaEngine<Cat>::merge_pushouts(const GP& w1, const GP& w2) const {
  const auto map = cat_->compose(w1.map, w2.map);
  if (is_trivial(w2))
    return check(GP{w1.tau, w1.attach, cat_->compose(w1.theta, w2.map), map});
  if (is_trivial(w1)) {
    auto attach = cat_->compose(w2.attach, cat_->inverse(w1.map));
    auto po = pushout(*cat_, w2.tau->value, attach);
    auto theta = induced(*cat_, po, coker_leg(w2), map);
    return check(GP{w2.tau, attach, theta, map});
  }
  // w1: pushout of alpha along a with leg b; w2: pushout of beta along c with leg d
  const auto& alpha = w1.tau->value;
  const auto& beta = w2.tau->value;
  const Morphism& s = w1.map;
  const Morphism& t = w2.map;
  auto b = coker_leg(w1);
  auto d = coker_leg(w2);
  auto qs = cat_->direct_sum({alpha.target(), s.source()});
  auto h = cat_->lift(w2.attach, column(*cat_, qs, {b, s}, s.target()));
  if (!h) throw VerificationFailure("pushout legs are not jointly surjective");
  auto e = cat_->compose(*h, qs.projections[0]);
  auto f = cat_->compose(*h, qs.projections[1]);
  auto tau = lower(w1.tau, w2.tau, e);
  auto src = cat_->direct_sum({alpha.source(), beta.source()});
  auto attach = column(*cat_, src, {w1.attach, f}, s.source());
  auto po = pushout(*cat_, tau->value, attach);
  auto tgt = cat_->direct_sum({alpha.target(), beta.target()});
  auto x = column(*cat_, tgt, {cat_->compose(b, t), d}, t.target());
  auto theta = induced(*cat_, po, x, map);
  return check(GP{tau, attach, theta, map});
}

template <class Cat>
GoodSurjectionWitness<Cat> SigmaEngine<Cat>::merge_surjections(const GS& w1, const GS& w2) const {
  const auto map = cat_->compose(w1.map, w2.map);
  auto finish = [&](const Ptr& tau, const Morphism& a) {
    auto theta = cat_->extend(cat_->cokernel(a).map, map);
    if (!theta) throw VerificationFailure("composite does not factor through the cokernel");
    return check(GS{tau, a, *theta, map});
  };
  if (is_trivial(w2)) return check(GS{w1.tau, w1.a, cat_->compose(w1.theta, w2.map), map});
  if (is_trivial(w1)) return finish(w2.tau, cat_->compose(w2.a, cat_->inverse(w1.map)));
  const auto& alpha = w1.tau->value;
  const auto& beta = w2.tau->value;
  auto c = cat_->lift(w2.a, w1.map);
  if (!c) throw VerificationFailure("projective does not lift through a surjection");
  auto d = cat_->lift(cat_->negate(cat_->compose(beta, *c)), w1.a);
  if (!d) throw VerificationFailure("relation does not lift into the kernel");
  auto tau = lower(w1.tau, w2.tau, *d);
  auto tgt = cat_->direct_sum({alpha.target(), beta.target()});
  return finish(tau, column(*cat_, tgt, {w1.a, *c}, w1.map.source()));
}

template <class Cat>
std::pair<GoodPushoutWitness<Cat>, GoodSurjectionWitness<Cat>> SigmaEngine<Cat>::swap(
    const GS& u, const GP& t) const {
  const auto map = cat_->compose(u.map, t.map);
  if (is_trivial(u))
    return {merge_pushouts(trivial_pushout(u.map), t), trivial_surjection(cat_->identity(t.map.target()))};
  if (is_trivial(t))
    return {trivial_pushout(cat_->identity(u.map.source())),
            check(GS{u.tau, u.a, cat_->compose(u.theta, t.map), map})};
  auto c = cat_->lift(t.attach, u.map);
  if (!c) throw VerificationFailure("attaching map does not lift through the surjection");
  auto po = pushout(*cat_, t.tau->value, *c);
  GP t1 = check(GP{t.tau, *c, cat_->identity(po.object), po.a_prime});
  auto u1map = induced(*cat_, po, coker_leg(t), map);
  auto a = cat_->compose(u.a, po.a_prime);
  auto theta = cat_->extend(cat_->cokernel(a).map, u1map);
  if (!theta) throw VerificationFailure("swapped surjection does not factor");
  return {t1, check(GS{u.tau, a, *theta, u1map})};
}

template <class Cat>
SigmaCertificate<Cat> SigmaEngine<Cat>::compose(const Cert& c1, const Cert& c2) const {
  if (!cat_->same_module(c1.map.target(), c2.map.source()))
    throw ObjectMismatch("composition of non-composable certificates");
  auto [t, u] = swap(c1.u, c2.t);
  return check(Cert{merge_pushouts(c1.t, t), merge_surjections(u, c2.u),
                    cat_->compose(c1.map, c2.map)});
}

template <class Cat>
SigmaCertificate<Cat> SigmaEngine<Cat>::then_iso(const Cert& c, const Morphism& iso) const {
  GS u{c.u.tau, c.u.a, cat_->compose(c.u.theta, iso), cat_->compose(c.u.map, iso)};
  return check(Cert{c.t, u, cat_->compose(c.map, iso)});
}

template <class Cat>
GoodSurjectionWitness<Cat> SigmaEngine<Cat>::revenge(const Cert& s, const Morphism& d) const {
  if (!cat_->is_zero(cat_->compose(s.map, d)))
    throw VerificationFailure("map is not killed by the certified map");
  auto e = cat_->cokernel(d).map;
  // the image of d is the image of b.u.d for the pushout leg b
  auto a = cat_->compose(cat_->compose(coker_leg(s.t), s.u.map), d);
  auto theta = cat_->extend(cat_->cokernel(a).map, e);
  if (!theta) throw VerificationFailure("cokernel does not factor");
  return check(GS{s.t.tau, a, *theta, e});
}

template <class Cat>
SigmaCertificate<Cat> SigmaEngine<Cat>::factor(const std::vector<WordStep<Cat>>& word) const {
  if (word.empty()) throw MalformedWord("empty word");
  std::optional<Cert> acc;
  for (std::size_t i = 0; i < word.size(); ++i) {
    Cert step = std::visit(
        [&](const auto& w) -> Cert {
          using W = std::decay_t<decltype(w)>;
          if (!verify(w))
            throw MalformedWord("step " + std::to_string(i + 1) + " does not replay");
          if constexpr (std::is_same_v<W, Cert>)
            return w;
          else
            return certificate(w);
        },
        word[i]);
    if (acc && !cat_->same_module(acc->map.target(), step.map.source()))
      throw MalformedWord("step " + std::to_string(i + 1) + " does not compose with step " +
                          std::to_string(i));
    acc = acc ? compose(*acc, step) : step;
  }
  return *acc;
}

// ------------------------------------------------------------------ membership

template <class Cat>
std::optional<SigmaCertificate<Cat>> SigmaEngine<Cat>::search_member(const Morphism& s) const {
  for (const auto& item : closure()) {
    const auto& tau = item.tau->value;
    for (const auto& j : cat_->hom_elements(tau.source(), s.source(), bounds_.coeff_window,
                                            bounds_.cap)) {
      auto po = pushout(*cat_, tau, j);
      auto u = cat_->extend(po.a_prime, s);
      if (!u) continue;
      auto gs = is_good_surjection(*u);
      if (gs.verdict != Verdict::Yes) continue;
      GP t{item.tau, j, cat_->identity(po.object), po.a_prime};
      Cert c{t, *gs.witness, s};
      if (verify(c)) return c;
    }
  }
  return std::nullopt;
}

template <class Cat>
MemberResult<Cat> SigmaEngine<Cat>::member(const Morphism& s) const {
  MemberResult<Cat> out;
  if (is_iso(*cat_, s)) {
    out.verdict = Verdict::Yes;
    out.certificate = Cert{trivial_pushout(s), trivial_surjection(cat_->identity(s.target())), s};
    out.reason = "isomorphism";
    return out;
  }
  auto im = cat_->image(s);
  auto gs = is_good_surjection(im.epi);
  std::string why;
  if (gs.verdict == Verdict::Yes) {
    auto gp = is_good_pushout(im.mono);
    if (gp.verdict == Verdict::Yes) {
      auto [t, u] = swap(*gs.witness, *gp.witness);
      out.verdict = Verdict::Yes;
      out.certificate = check(Cert{t, u, s});
      out.reason = "image factorisation into good maps";
      return out;
    }
    why = "image inclusion: " + gp.reason;
  } else {
    why = "image surjection: " + gs.reason;
  }
  if (cat_->is_projective(s.source()) && cat_->is_projective(s.target()))
    for (const auto& term : triangular_closure(ClosureKind::Lower, 1)) {
      if (!cat_->same_module(term->value.source(), s.source()) ||
          !cat_->same_module(term->value.target(), s.target()) || !cat_->equal(term->value, s))
        continue;
      auto attach = cat_->negate(cat_->identity(s.source()));
      auto po = pushout(*cat_, s, attach);
      auto theta = induced(*cat_, po, cat_->identity(s.target()), s);
      out.verdict = Verdict::Yes;
      out.certificate = check(certificate(GP{term, attach, theta, s}));
      out.reason = "lower triangular closure element";
      return out;
    }
  if (!spec_.all_injective)
    if (auto c = search_member(s)) {
      out.verdict = Verdict::Yes;
      out.certificate = c;
      out.reason = "bounded search";
      return out;
    }
  out.reason = why;
  if (oracle().survives(cat_->cokernel(s).object) == Survival::Survives) {
    out.oracle_refutes = true;
    out.reason += "; oracle: cokernel survives localisation";
  } else if (oracle().exact() &&
             oracle().survives(cat_->kernel(s).object) == Survival::Survives) {
    out.oracle_refutes = true;
    out.reason += "; oracle: kernel survives localisation";
  }
  return out;
}

// ------------------------------------------------------------------ moves

template <class Cat>
GoodSurjectionWitness<Cat> SigmaEngine<Cat>::kill_torsion(const Module& m) const {
  GS acc = trivial_surjection(cat_->identity(m));
  for (int round = 0; round < bounds_.word_length; ++round) {
    const Module& x = acc.map.target();
    auto tr = trace(x);
    if (tr.pieces.empty()) break;
    auto q = cat_->cokernel(tr.inclusion).map;
    acc = merge_surjections(acc, surjection_from_pieces(tr.pieces, cat_->identity(x), q));
  }
  return acc;
}

template <class Cat>
std::vector<GoodPushoutWitness<Cat>> SigmaEngine<Cat>::pushout_moves(const Module& m) const {
  std::vector<GP> out;
  for (const auto& item : closure()) {
    auto reps = cat_->ext_reps(item.tau->value, m, bounds_.coeff_window, bounds_.cap);
    for (const auto& j : reps.reps) {
      if (out.size() >= bounds_.cap) return out;
      auto po = pushout(*cat_, item.tau->value, j);
      out.push_back(GP{item.tau, j, cat_->identity(po.object), po.a_prime});
    }
  }
  return out;
}

}  // namespace uloc
