#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uloc/error.hpp"

namespace uloc {

enum class Verdict { Yes, No, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "unknown";
  }
}

// Outcome of asking whether a module or map survives localisation.
enum class Survival { Survives, Killed, Unknown };

template <class Mod, class Mor>
struct DirectSum {
  Mod object;
  std::vector<Mor> inclusions;
  std::vector<Mor> projections;
};

template <class Mod, class Mor>
struct Cokernel {
  Mod object;
  Mor map;
};

template <class Mod, class Mor>
struct Kernel {
  Mod object;
  Mor map;
};

template <class Mod, class Mor>
struct Image {
  Mod object;
  Mor epi;
  Mor mono;
};

// Generators of Hom(M, N); orders[i] is the additive order of generators[i]
// ("0" for infinite order).
template <class Mor>
struct HomGroup {
  std::vector<Mor> generators;
  std::vector<std::string> orders;
};

template <class Mor>
struct IsoResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Mor> iso;
};

// Representatives j: P -> X of Hom(P, X) / sigma . Hom(Q, X), the zero class first.
template <class Mor>
struct ExtReps {
  std::vector<Mor> reps;
  std::vector<std::string> invariants;
  bool complete = true;
};

// Ext^1(M, N) computed from a projective presentation of M; generators are
// maps from the relation module P to N, middles the corresponding extensions.
template <class Mod, class Mor>
struct ExtGroup {
  std::vector<std::string> invariants;
  std::vector<Mor> generators;
  std::vector<Mod> middles;
};

// sigma: P -> Q injective between projectives, cover: Q -> M its cokernel.
template <class Mod, class Mor>
struct Presentation {
  Mor sigma;
  Mor cover;
};

// Pushout of a: A -> B and b: A -> C. a_prime: C -> D is the pushout of a along
// b, b_prime: B -> D the pushout of b along a, and a.b_prime = -b.a_prime.
template <class Mod, class Mor>
struct Pushout {
  Mod object;
  Mor a_prime;
  Mor b_prime;
  Mor coker;  // B (+) C -> D
  DirectSum<Mod, Mor> sum;
};

// Sum over i, j of proj_i . blocks[i][j] . inj_j; rows index source summands.
template <class Cat>
typename Cat::Morphism block(const Cat& cat,
                             const DirectSum<typename Cat::Module, typename Cat::Morphism>& src,
                             const DirectSum<typename Cat::Module, typename Cat::Morphism>& tgt,
                             const std::vector<std::vector<std::optional<typename Cat::Morphism>>>& blocks) {
  auto out = cat.zero_map(src.object, tgt.object);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = 0; j < blocks[i].size(); ++j)
      if (blocks[i][j])
        out = cat.add(out, cat.compose(cat.compose(src.projections.at(i), *blocks[i][j]),
                                       tgt.inclusions.at(j)));
  return out;
}

// The map out of a direct sum restricting to maps[i] on summand i.
template <class Cat>
typename Cat::Morphism column(const Cat& cat,
                              const DirectSum<typename Cat::Module, typename Cat::Morphism>& src,
                              const std::vector<typename Cat::Morphism>& maps,
                              const typename Cat::Module& target) {
  auto out = cat.zero_map(src.object, target);
  for (std::size_t i = 0; i < maps.size(); ++i)
    out = cat.add(out, cat.compose(src.projections.at(i), maps[i]));
  return out;
}

// The map into a direct sum with components maps[j].
template <class Cat>
typename Cat::Morphism row(const Cat& cat, const typename Cat::Module& source,
                           const DirectSum<typename Cat::Module, typename Cat::Morphism>& tgt,
                           const std::vector<typename Cat::Morphism>& maps) {
  auto out = cat.zero_map(source, tgt.object);
  for (std::size_t j = 0; j < maps.size(); ++j)
    out = cat.add(out, cat.compose(maps[j], tgt.inclusions.at(j)));
  return out;
}

template <class Cat>
Pushout<typename Cat::Module, typename Cat::Morphism> pushout(const Cat& cat,
                                                              const typename Cat::Morphism& a,
                                                              const typename Cat::Morphism& b) {
  if (!cat.same_module(a.source(), b.source()))
    throw SourceMismatch("pushout of maps with different sources");
  auto sum = cat.direct_sum({a.target(), b.target()});
  auto stacked = row(cat, a.source(), sum, {a, b});
  auto ck = cat.cokernel(stacked);
  auto a_prime = cat.compose(sum.inclusions[1], ck.map);
  auto b_prime = cat.compose(sum.inclusions[0], ck.map);
  return {ck.object, a_prime, b_prime, ck.map, sum};
}

// The map D -> N out of a pushout determined by x on B and y on C, where
// a.x + b.y = 0 for the pushout's legs a: A -> B, b: A -> C.
template <class Cat>
typename Cat::Morphism induced(const Cat& cat,
                               const Pushout<typename Cat::Module, typename Cat::Morphism>& po,
                               const typename Cat::Morphism& x, const typename Cat::Morphism& y) {
  auto on_sum = column(cat, po.sum, {x, y}, x.target());
  auto theta = cat.extend(po.coker, on_sum);
  if (!theta) throw VerificationFailure("cocone does not factor through the pushout");
  return *theta;
}

template <class Cat>
bool is_iso(const Cat& cat, const typename Cat::Morphism& f) {
  return cat.is_injective(f) && cat.is_surjective(f);
}

}  // namespace uloc
