#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uloc/category.hpp"
#include "uloc/error.hpp"
#include "uloc/good_maps.hpp"
#include "uloc/ore.hpp"

namespace uloc {

// M = M_0 -> M_1 -> ... where steps[i] : M_i -> M_{i+1}.
template <class Cat>
struct DirectedChain {
  typename Cat::Module base;
  std::vector<SigmaCertificate<Cat>> steps;
  std::optional<std::size_t> stabilised_at;

  const typename Cat::Module& last() const { return steps.empty() ? base : steps.back().map.target(); }
};

enum class InductionStatus { Stabilised, Symbolic };

template <class Cat>
struct InductionResult {
  InductionStatus status = InductionStatus::Symbolic;
  typename Cat::Module module;  // stabilised value, or the last chain state
  DirectedChain<Cat> chain;
  Verdict oracle_agrees = Verdict::Unknown;
  std::string oracle_note;
};

template <class Cat>
struct Submodule {
  typename Cat::Module object;
  typename Cat::Morphism inclusion;
  std::string method;
  Verdict complete = Verdict::Yes;
};

template <class Cat>
struct ConditionCheck {
  std::string name;
  Verdict verdict = Verdict::Yes;
  std::vector<typename Cat::Module> counterexamples;
  std::string detail;
};

template <class Cat>
struct PrelocalisingReport {
  std::vector<ConditionCheck<Cat>> conditions;  // extensions, kernels, cokernels, image-kernel
  Verdict verdict() const {
    Verdict v = Verdict::Yes;
    for (const auto& c : conditions) {
      if (c.verdict == Verdict::No) return Verdict::No;
      if (c.verdict == Verdict::Unknown) v = Verdict::Unknown;
    }
    return v;
  }
};

template <class Cat>
struct TrivialityResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<SigmaCertificate<Cat>> certificate;  // presentation map in sigma
  std::string reason;
};

struct FlatnessEntry {
  std::string module;
  Verdict tor_vanishes = Verdict::Unknown;
  std::string detail;
};

struct FlatnessReport {
  Verdict verdict = Verdict::Yes;
  std::vector<FlatnessEntry> entries;
  FlatnessEntry ring;  // Tor_1 of the localised ring against itself
  std::string note;
};

template <class Cat>
struct TrivialComparison {
  Verdict verdict = Verdict::Yes;
  std::vector<typename Cat::Module> trivial_outside;  // sigma-trivial, missing from the sample
  std::vector<typename Cat::Module> member_not_trivial;
  std::vector<typename Cat::Module> undecided;
};

// Largest submodule of m built by repeatedly adding images of maps from the
// given modules into the current quotient.
template <class Cat>
Submodule<Cat> generated_torsion(const Cat& C, const typename Cat::Module& m,
                                 const std::vector<typename Cat::Module>& from,
                                 std::size_t rounds = 64) {
  auto q = C.identity(m);
  for (std::size_t r = 0; r < rounds; ++r) {
    const auto& x = q.target();
    std::vector<typename Cat::Morphism> images;
    for (const auto& e : from)
      for (const auto& g : C.hom(e, x).generators)
        if (!C.is_zero(g)) images.push_back(g);
    if (images.empty()) break;
    std::vector<typename Cat::Module> srcs;
    for (const auto& g : images) srcs.push_back(g.source());
    auto sum = C.direct_sum(srcs);
    auto joint = column(C, sum, images, x);
    auto next = C.cokernel(joint).map;
    q = C.compose(q, next);
  }
  auto k = C.kernel(q);
  return {k.object, k.map, "generated", Verdict::Yes};
}

template <class Cat>
class Induction {
 public:
  using Module = typename Cat::Module;
  using Morphism = typename Cat::Morphism;
  using Cert = SigmaCertificate<Cat>;
  using Engine = SigmaEngine<Cat>;

  explicit Induction(const Engine& engine) : e_(&engine), set_(engine) {}

  const Cat& cat() const { return e_->cat(); }
  const Engine& engine() const { return *e_; }

  InductionResult<Cat> induce(const Module& m) const;
  bool verify(const DirectedChain<Cat>& chain) const;

  Submodule<Cat> torsion_submodule(const Module& m) const;
  Submodule<Cat> kernel_of_induction(const Module& m) const;
  ConditionCheck<Cat> kernels_torsion_check(const std::vector<Module>& sample) const;
  PrelocalisingReport<Cat> is_prelocalising(const std::vector<Module>& sample, int length_bound) const;
  TrivialityResult<Cat> is_sigma_trivial(const Module& m) const;
  FlatnessReport stable_flatness_check(const std::vector<Module>& sample, int degree = 1) const;
  TrivialComparison<Cat> s_triv_equals_s_check(const std::vector<Module>& sample, int bound) const;

 private:
  std::optional<Cert> advance(const Module& m) const;
  Verdict contains(const std::vector<Module>& sample, const Module& x) const;
  std::vector<Morphism> maps_between(const std::vector<Module>& sample) const;
  Submodule<Cat> sum_of_kernels(const Module& m, const std::vector<Cert>& maps) const;
  FlatnessEntry tor_against_ring(const Module& m) const;
  FlatnessEntry ring_against_ring() const;

  const Engine* e_;
  SigmaOre<Cat> set_;
};

// ------------------------------------------------------------------ induce

template <class Cat>
bool is_iso_map(const Cat& C, const typename Cat::Morphism& f) {
  return C.is_injective(f) && C.is_surjective(f);
}

// A non-split good pushout followed by torsion killing that is not an iso.
template <class Cat>
std::optional<SigmaCertificate<Cat>> Induction<Cat>::advance(const Module& m) const {
  const Cat& C = cat();
  for (const auto& g : e_->pushout_moves(m)) {
    if (C.is_zero(g.attach)) continue;
    auto step = e_->certificate(g);
    auto k = e_->kill_torsion(step.map.target());
    if (!Engine::is_trivial(k)) step = e_->compose(step, e_->certificate(k));
    if (!is_iso_map(C, step.map)) return step;
  }
  return std::nullopt;
}

template <class Cat>
InductionResult<Cat> Induction<Cat>::induce(const Module& m) const {
  const Cat& C = cat();
  InductionResult<Cat> out;
  out.chain.base = m;
  auto k = e_->kill_torsion(m);
  if (!Engine::is_trivial(k)) out.chain.steps.push_back(e_->certificate(k));
  for (int round = 0; round < e_->bounds().depth; ++round) {
    auto step = advance(out.chain.last());
    if (!step) {
      out.status = InductionStatus::Stabilised;
      out.chain.stabilised_at = out.chain.steps.size();
      break;
    }
    out.chain.steps.push_back(std::move(*step));
  }
  if (!out.chain.stabilised_at && !advance(out.chain.last())) {
    out.status = InductionStatus::Stabilised;
    out.chain.stabilised_at = out.chain.steps.size();
  }
  out.module = out.chain.last();

  const auto& oracle = e_->oracle();
  if constexpr (requires { oracle.localise(m); }) {
    out.oracle_note = "localised over " + oracle.describe_ring() + ": " + oracle.describe_localised(m);
    if (out.status == InductionStatus::Stabilised)
      out.oracle_agrees = C.iso_test(out.module, oracle.localise(m)).verdict;
  } else {
    out.oracle_note = "checked against " + oracle.describe_ring();
    if (out.status == InductionStatus::Stabilised) {
      // the stabilised module must be nonzero exactly when m survives
      auto s = oracle.survives(m);
      if (s == Survival::Survives)
        out.oracle_agrees = C.is_zero_module(out.module) ? Verdict::No : Verdict::Yes;
    }
  }
  return out;
}

template <class Cat>
bool Induction<Cat>::verify(const DirectedChain<Cat>& chain) const {
  const Cat& C = cat();
  Module cur = chain.base;
  for (const auto& s : chain.steps) {
    if (!C.same_module(s.map.source(), cur) || !e_->verify(s)) return false;
    cur = s.map.target();
  }
  if (chain.stabilised_at && *chain.stabilised_at != chain.steps.size()) return false;
  return true;
}

// ------------------------------------------------------------------ kernels

template <class Cat>
Submodule<Cat> Induction<Cat>::torsion_submodule(const Module& m) const {
  auto k = e_->kill_torsion(m);
  auto ker = cat().kernel(k.map);
  Verdict complete = Verdict::Yes;
  // a further round would still find closure images when the word length ran out
  if (!e_->trace(k.map.target()).pieces.empty()) complete = Verdict::Unknown;
  return {ker.object, ker.map, "torsion", complete};
}

template <class Cat>
Submodule<Cat> Induction<Cat>::sum_of_kernels(const Module& m, const std::vector<Cert>& maps) const {
  const Cat& C = cat();
  std::vector<Morphism> incs;
  std::vector<Module> srcs;
  for (const auto& c : maps) {
    auto k = C.kernel(c.map);
    if (C.is_zero_module(k.object)) continue;
    incs.push_back(k.map);
    srcs.push_back(k.object);
  }
  if (incs.empty()) return {C.zero_module(), C.zero_map(C.zero_module(), m), "search", Verdict::Yes};
  auto sum = C.direct_sum(srcs);
  auto im = C.image(column(C, sum, incs, m));
  return {im.object, im.mono, "search", Verdict::Yes};
}

template <class Cat>
Submodule<Cat> Induction<Cat>::kernel_of_induction(const Module& m) const {
  if (e_->spec().all_injective) {
    std::vector<Module> sample;
    for (const auto& it : e_->closure()) sample.push_back(it.object);
    if (kernels_torsion_check(sample).verdict == Verdict::Yes) return torsion_submodule(m);
  }
  auto chain = induce(m);
  std::vector<Cert> maps = set_.denominators(m);
  Cert acc = e_->identity(m);
  for (const auto& s : chain.chain.steps) {
    acc = e_->compose(acc, s);
    maps.push_back(acc);
  }
  auto out = sum_of_kernels(m, maps);
  out.complete = chain.status == InductionStatus::Stabilised ? Verdict::Yes : Verdict::Unknown;
  return out;
}

template <class Cat>
std::vector<typename Cat::Morphism> Induction<Cat>::maps_between(const std::vector<Module>& sample) const {
  const Cat& C = cat();
  const auto& b = e_->bounds();
  std::vector<Morphism> out;
  for (const auto& a : sample)
    for (const auto& t : sample)
      for (auto& f : C.hom_elements(a, t, b.coeff_window, b.cap)) {
        if (out.size() >= b.cap) return out;
        out.push_back(std::move(f));
      }
  return out;
}

template <class Cat>
ConditionCheck<Cat> Induction<Cat>::kernels_torsion_check(const std::vector<Module>& sample) const {
  const Cat& C = cat();
  ConditionCheck<Cat> out{"kernels are torsion", Verdict::Yes, {}, ""};
  for (const auto& f : maps_between(sample)) {
    auto k = C.kernel(f).object;
    if (C.is_zero_module(k)) continue;
    auto t = torsion_submodule(k);
    if (!C.is_surjective(t.inclusion)) {
      out.verdict = Verdict::No;
      out.counterexamples.push_back(k);
      out.detail = "kernel of " + C.describe(f) + " is not torsion";
      return out;
    }
  }
  return out;
}

// ------------------------------------------------------------------ pre-localising

template <class Cat>
Verdict Induction<Cat>::contains(const std::vector<Module>& sample, const Module& x) const {
  const Cat& C = cat();
  if (C.is_zero_module(x)) return Verdict::Yes;
  Verdict v = Verdict::No;
  for (const auto& s : sample) {
    auto r = C.iso_test(s, x).verdict;
    if (r == Verdict::Yes) return Verdict::Yes;
    if (r == Verdict::Unknown) v = Verdict::Unknown;
  }
  return v;
}

template <class Cat>
PrelocalisingReport<Cat> Induction<Cat>::is_prelocalising(const std::vector<Module>& sample,
                                                          int length_bound) const {
  const Cat& C = cat();
  const auto& b = e_->bounds();
  PrelocalisingReport<Cat> out;
  auto note = [&](ConditionCheck<Cat>& c, const Module& x, const std::string& why) {
    Verdict v = contains(sample, x);
    if (v == Verdict::Yes) return;
    if (v == Verdict::No) {
      for (const auto& seen : c.counterexamples)
        if (C.iso_test(seen, x).verdict == Verdict::Yes) return;
      c.verdict = Verdict::No;
      c.counterexamples.push_back(x);
      if (c.detail.empty()) c.detail = why;
    } else if (c.verdict == Verdict::Yes) {
      c.verdict = Verdict::Unknown;
    }
  };

  ConditionCheck<Cat> ext{"extensions", Verdict::Yes, {}, ""};
  for (const auto& y : sample) {
    auto ly = C.length(y);
    if (!ly) continue;
    auto pres = C.presentation(y);
    for (const auto& x : sample) {
      auto lx = C.length(x);
      if (!lx || *lx + *ly > length_bound) continue;
      for (const auto& j : C.ext_reps(pres.sigma, x, b.coeff_window, b.cap).reps) {
        auto po = pushout(C, pres.sigma, j);
        note(ext, po.object, "extension of " + C.describe(y) + " by " + C.describe(x));
      }
    }
  }
  out.conditions.push_back(ext);

  ConditionCheck<Cat> kers{"kernels of surjections", Verdict::Yes, {}, ""};
  ConditionCheck<Cat> cokers{"cokernels of injections", Verdict::Yes, {}, ""};
  ConditionCheck<Cat> clause{"image and kernel", Verdict::Yes, {}, ""};
  for (const auto& f : maps_between(sample)) {
    const bool inj = C.is_injective(f);
    auto ck = C.cokernel(f).object;
    if (C.is_surjective(f)) note(kers, C.kernel(f).object, "kernel of " + C.describe(f));
    if (inj) note(cokers, ck, "cokernel of " + C.describe(f));
    if (contains(sample, ck) == Verdict::Yes) {
      note(clause, C.image(f).object, "image of " + C.describe(f));
      note(clause, C.kernel(f).object, "kernel of " + C.describe(f));
    }
  }
  out.conditions.push_back(kers);
  out.conditions.push_back(cokers);
  out.conditions.push_back(clause);
  return out;
}

// ------------------------------------------------------------------ triviality

template <class Cat>
TrivialityResult<Cat> Induction<Cat>::is_sigma_trivial(const Module& m) const {
  const Cat& C = cat();
  TrivialityResult<Cat> out;
  if (C.is_zero_module(m)) {
    out.verdict = Verdict::Yes;
    out.certificate = e_->identity(m);
    out.reason = "zero module";
    return out;
  }
  auto pres = C.presentation(m);
  if (!C.is_injective(pres.sigma))
    throw HomDimTooLarge("module has no presentation with injective relation map");
  auto r = e_->member(pres.sigma);
  if (r.verdict == Verdict::Yes) {
    out.verdict = Verdict::Yes;
    out.certificate = r.certificate;
    out.reason = "presentation map is in sigma";
    return out;
  }
  if (e_->oracle().survives(m) == Survival::Survives) {
    out.verdict = Verdict::No;
    out.reason = "oracle: the module survives localisation";
    return out;
  }
  out.reason = "presentation map not certified within bounds";
  return out;
}

template <class Cat>
TrivialComparison<Cat> Induction<Cat>::s_triv_equals_s_check(const std::vector<Module>& sample,
                                                             int bound) const {
  TrivialComparison<Cat> out;
  for (const auto& x : cat().sample_modules(bound)) {
    auto t = is_sigma_trivial(x).verdict;
    auto in = contains(sample, x);
    if (t == Verdict::Yes && in == Verdict::No) out.trivial_outside.push_back(x);
    if (t == Verdict::Unknown || in == Verdict::Unknown) out.undecided.push_back(x);
  }
  for (const auto& x : sample)
    if (is_sigma_trivial(x).verdict == Verdict::No) out.member_not_trivial.push_back(x);
  if (!out.trivial_outside.empty() || !out.member_not_trivial.empty())
    out.verdict = Verdict::No;
  else if (!out.undecided.empty())
    out.verdict = Verdict::Unknown;
  return out;
}

// ------------------------------------------------------------------ flatness

template <class Cat>
FlatnessEntry Induction<Cat>::tor_against_ring(const Module& m) const {
  const Cat& C = cat();
  FlatnessEntry out{C.describe(m), Verdict::Unknown, ""};
  auto pres = C.presentation(m);
  if constexpr (requires { e_->oracle().localise(m); }) {
    // Tor_1(M, L) is the kernel of the presentation matrix over L, a subring of
    // the fraction field, so it vanishes exactly when the matrix has full row
    // rank over R.
    auto k = C.kernel(pres.sigma).object;
    out.tor_vanishes = C.is_zero_module(k) ? Verdict::Yes : Verdict::No;
    out.detail = out.tor_vanishes == Verdict::Yes ? "0" : "kernel " + C.describe(k);
  } else {
    // Restriction Hom(P0, X) -> Hom(P1, X) onto for every local test module X.
    const auto& F = C.field();
    for (const auto& x : e_->oracle().test_modules()) {
      auto bp = C.hom_basis(pres.sigma.source(), x);
      std::vector<Morphism> restricted;
      for (const auto& h : C.hom_basis(pres.sigma.target(), x)) restricted.push_back(C.compose(pres.sigma, h));
      std::size_t rows = 0;
      for (std::size_t v = 0; v < C.shape().vertex_count(); ++v) rows += pres.sigma.source().dim(v) * x.dim(v);
      typename Cat::Mat A(rows, restricted.size());
      for (std::size_t k = 0; k < restricted.size(); ++k) {
        std::size_t r = 0;
        for (const auto& mm : restricted[k].maps())
          for (auto e : mm.data()) A(r++, k) = e;
      }
      if (la::rank(F, A) != bp.size()) {
        out.detail = "restriction to " + C.describe(x) + " is not onto";
        return out;
      }
    }
    out.tor_vanishes = Verdict::Yes;
    out.detail = "0 on " + std::to_string(e_->oracle().test_modules().size()) + " test modules";
  }
  return out;
}

template <class Cat>
FlatnessEntry Induction<Cat>::ring_against_ring() const {
  const Cat& C = cat();
  FlatnessEntry out{"", Verdict::Unknown, ""};
  const auto& oracle = e_->oracle();
  out.module = oracle.describe_ring();
  if constexpr (requires { oracle.denominator(); }) {
    // L is the colimit of R -D-> R -D-> ...; its truncated presentation has
    // relations e_k - D e_{k+1}. Tor_1(L, L) is the colimit of the kernels of
    // the relation matrix over L, each of which is computed over R.
    const int n = std::max(1, e_->bounds().depth);
    const auto& R = C.ring();
    typename Cat::Mat rel(n, n + 1);
    for (int k = 0; k < n; ++k) {
      rel(k, k) = R.one();
      rel(k, k + 1) = R.neg(oracle.denominator());
    }
    auto f = C.morphism(C.free_module(n), C.free_module(n + 1), rel);
    auto k = C.kernel(f).object;
    out.tor_vanishes = C.is_zero_module(k) ? Verdict::Yes : Verdict::No;
    out.detail = out.tor_vanishes == Verdict::Yes ? "0" : "kernel " + C.describe(k);
  } else {
    out.detail = "not computed for path algebras";
  }
  return out;
}

template <class Cat>
FlatnessReport Induction<Cat>::stable_flatness_check(const std::vector<Module>& sample, int degree) const {
  FlatnessReport out;
  constexpr bool euclidean = requires(const typename Cat::Oracle& o) { o.denominator(); };
  if (degree < 1) throw BoundViolation("Tor degree must be positive");
  if (degree > 1) {
    if constexpr (!euclidean) throw UnsupportedBackend("higher Tor is only available over the oracle ring");
    out.note = "global dimension one: Tor_i vanishes for i >= 2";
    out.ring = {e_->oracle().describe_ring(), Verdict::Yes, "0"};
    return out;
  }
  for (const auto& m : sample) {
    out.entries.push_back(tor_against_ring(m));
    const auto v = out.entries.back().tor_vanishes;
    if (v == Verdict::No) out.verdict = Verdict::No;
    else if (v == Verdict::Unknown && out.verdict == Verdict::Yes) out.verdict = Verdict::Unknown;
  }
  out.ring = ring_against_ring();
  if (out.ring.tor_vanishes == Verdict::No) out.verdict = Verdict::No;
  else if (out.ring.tor_vanishes == Verdict::Unknown && out.verdict == Verdict::Yes && euclidean)
    out.verdict = Verdict::Unknown;
  out.note = "hereditary backend: Tor_i vanishes for i >= 2";
  return out;
}

}  // namespace uloc
