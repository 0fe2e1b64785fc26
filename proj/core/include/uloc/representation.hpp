#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "uloc/category.hpp"
#include "uloc/linalg.hpp"
#include "uloc/quiver.hpp"
#include "uloc/rings.hpp"

namespace uloc {

using FpMatrix = Matrix<std::uint32_t>;

class QuiverCategory;

// A representation of the quiver: one vector space F_p^{d_v} per vertex and,
// for each arrow a: s -> t, a d_s x d_t matrix acting on row vectors.
class Representation {
 public:
  Representation() = default;

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(std::size_t v) const { return dims_[v]; }
  const std::vector<FpMatrix>& arrows() const { return arrows_; }
  const FpMatrix& arrow(std::size_t a) const { return arrows_[a]; }
  std::size_t total_dim() const;
  bool is_zero() const { return total_dim() == 0; }

  bool operator==(const Representation& o) const { return dims_ == o.dims_ && arrows_ == o.arrows_; }
  bool operator!=(const Representation& o) const { return !(*this == o); }

 private:
  friend class QuiverCategory;
  Representation(std::vector<std::size_t> dims, std::vector<FpMatrix> arrows)
      : dims_(std::move(dims)), arrows_(std::move(arrows)) {}

  std::vector<std::size_t> dims_;
  std::vector<FpMatrix> arrows_;
};

// Per-vertex linear maps commuting with the arrow matrices.
class RepMorphism {
 public:
  const Representation& source() const { return source_; }
  const Representation& target() const { return target_; }
  const FpMatrix& map(std::size_t v) const { return maps_[v]; }
  const std::vector<FpMatrix>& maps() const { return maps_; }

 private:
  friend class QuiverCategory;
  RepMorphism(Representation s, Representation t, std::vector<FpMatrix> maps)
      : source_(std::move(s)), target_(std::move(t)), maps_(std::move(maps)) {}

  Representation source_, target_;
  std::vector<FpMatrix> maps_;
};

// Detects survival under localisation with test modules X on which every
// generator induces a bijection Hom(Q, X) -> Hom(P, X): a map d survives when
// d.g != 0 for some g into such an X. Never proves that something is killed.
class QuiverOracle {
 public:
  QuiverOracle(const QuiverCategory& cat, const std::vector<RepMorphism>& generators,
               int sample_bound);

  Survival survives(const Representation& m) const;
  Survival survives(const RepMorphism& f) const;
  const std::vector<Representation>& test_modules() const { return tests_; }
  bool exact() const { return false; }
  std::string describe_ring() const;

 private:
  const QuiverCategory* cat_;
  std::vector<Representation> tests_;
};

class QuiverCategory {
 public:
  using Module = Representation;
  using Morphism = RepMorphism;
  using Mat = FpMatrix;
  using Sum = DirectSum<Module, Morphism>;
  using Oracle = QuiverOracle;

  struct Cover {
    Representation object;
    RepMorphism map;
    std::vector<std::size_t> multiplicities;  // of each P_v
  };

  QuiverCategory(QuiverShape shape, std::uint32_t p, std::size_t iso_dimension_cap = 12,
                 std::uint64_t seed = 0x5eedu);

  const QuiverShape& shape() const { return shape_; }
  const PrimeField& field() const { return F_; }
  std::string name() const { return "path_algebra"; }
  std::size_t iso_dimension_cap() const { return iso_cap_; }
  void set_oracle_sample_bound(int b) { oracle_bound_ = b; }

  // ----- objects
  Representation representation(std::vector<std::size_t> dims, std::vector<FpMatrix> arrows) const;
  Representation zero_module() const;
  Representation projective(std::size_t v) const;
  Representation simple(std::size_t v) const;
  Representation ring_module() const;
  bool same_module(const Representation& a, const Representation& b) const { return a == b; }
  bool is_zero_module(const Representation& m) const { return m.is_zero(); }

  // ----- morphisms
  RepMorphism morphism(const Representation& s, const Representation& t, std::vector<FpMatrix> maps) const;
  // The map P_v -> X sending the trivial path e_v to x (a 1 x dim X_v row).
  RepMorphism yoneda(std::size_t v, const Representation& x, const FpMatrix& element) const;
  RepMorphism identity(const Representation& m) const;
  RepMorphism zero_map(const Representation& s, const Representation& t) const;
  RepMorphism compose(const RepMorphism& f, const RepMorphism& g) const;
  RepMorphism add(const RepMorphism& f, const RepMorphism& g) const;
  RepMorphism negate(const RepMorphism& f) const;
  RepMorphism scale(const RepMorphism& f, std::uint32_t c) const;
  bool equal(const RepMorphism& f, const RepMorphism& g) const;
  bool is_zero(const RepMorphism& f) const;

  // ----- abelian structure
  Sum direct_sum(const std::vector<Representation>& parts) const;
  Cokernel<Module, Morphism> cokernel(const RepMorphism& f) const;
  Kernel<Module, Morphism> kernel(const RepMorphism& f) const;
  Image<Module, Morphism> image(const RepMorphism& f) const;
  bool is_injective(const RepMorphism& f) const;
  bool is_surjective(const RepMorphism& f) const;

  std::vector<RepMorphism> hom_basis(const Representation& m, const Representation& n) const;
  HomGroup<Morphism> hom(const Representation& m, const Representation& n) const;
  std::vector<RepMorphism> hom_elements(const Representation& m, const Representation& n,
                                        int window, std::size_t cap) const;
  RepMorphism random_morphism(const Representation& m, const Representation& n,
                              std::mt19937_64& rng, int window) const;
  std::optional<RepMorphism> lift(const RepMorphism& f, const RepMorphism& g) const;
  std::optional<RepMorphism> extend(const RepMorphism& q, const RepMorphism& f) const;
  RepMorphism inverse(const RepMorphism& f) const;
  bool is_invertible(const RepMorphism& f) const;
  IsoResult<Morphism> iso_test(const Representation& a, const Representation& b) const;

  ExtReps<Morphism> ext_reps(const RepMorphism& sigma, const Representation& x, int window,
                             std::size_t cap) const;
  ExtGroup<Module, Morphism> ext1(const Representation& m, const Representation& n) const;
  // dim Ext^1 from the standard complex sum_v Hom(M_v, N_v) -> sum_a Hom(M_s, N_t).
  std::size_t ext1_dimension(const Representation& m, const Representation& n) const;

  std::optional<long> length(const Representation& m) const {
    return static_cast<long>(m.total_dim());
  }
  Cover projective_cover(const Representation& m) const;
  bool is_projective(const Representation& m) const;
  Presentation<Module, Morphism> presentation(const Representation& m) const;
  // All representations of total dimension 1..bound up to isomorphism.
  std::vector<Representation> sample_modules(int bound) const;
  std::vector<RepMorphism> element_maps(const Representation& m) const;

  Oracle make_oracle(const std::vector<RepMorphism>& generators) const {
    return Oracle(*this, generators, oracle_bound_);
  }

  std::string describe(const Representation& m) const;
  std::string describe(const RepMorphism& f) const;
  nlohmann::json to_json(const Representation& m) const;
  nlohmann::json to_json(const RepMorphism& f) const;
  Representation module_from_json(const nlohmann::json& j) const;
  RepMorphism morphism_from_json(const nlohmann::json& j) const;
  nlohmann::json matrix_to_json(const FpMatrix& m) const;
  FpMatrix matrix_from_json(const nlohmann::json& j, std::size_t rows, std::size_t cols) const;

 private:
  struct ExtBasis {
    std::vector<RepMorphism> hom_basis;  // of Hom(P, X)
    FpMatrix complement;                 // rows: coordinates of class representatives
  };
  ExtBasis ext_basis(const RepMorphism& sigma, const Representation& x) const;
  FpMatrix flatten(const RepMorphism& f) const;  // column vector of all entries
  RepMorphism combine(const std::vector<RepMorphism>& basis, const FpMatrix& coords,
                      const Representation& s, const Representation& t) const;
  std::optional<FpMatrix> solve_coordinates(const std::vector<RepMorphism>& vectors,
                                            const FpMatrix& target) const;

  QuiverShape shape_;
  PrimeField F_;
  std::size_t iso_cap_;
  std::uint64_t seed_;
  int oracle_bound_ = 3;
};

}  // namespace uloc
