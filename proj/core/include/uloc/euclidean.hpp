#pragma once

#include <functional>
#include <nlohmann/json.hpp>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "uloc/category.hpp"
#include "uloc/linalg.hpp"
#include "uloc/rings.hpp"

namespace uloc {

template <class Ring>
class EuclideanCategory;

// R/(d_1) + ... + R/(d_k) + R^f with normalised non-unit d_i, d_i | d_{i+1}.
// Every module the category hands out is in this form, so isomorphic modules
// compare equal.
template <class Ring>
class EuclideanModule {
 public:
  using T = typename Ring::value_type;

  EuclideanModule() = default;

  const std::vector<T>& factors() const { return factors_; }
  std::size_t free_rank() const { return free_; }
  std::size_t generators() const { return factors_.size() + free_; }
  std::size_t torsion_generators() const { return factors_.size(); }
  bool is_zero() const { return generators() == 0; }

  bool operator==(const EuclideanModule& o) const {
    return free_ == o.free_ && factors_ == o.factors_;
  }
  bool operator!=(const EuclideanModule& o) const { return !(*this == o); }

 private:
  friend class EuclideanCategory<Ring>;
  EuclideanModule(std::vector<T> factors, std::size_t free)
      : factors_(std::move(factors)), free_(free) {}

  std::vector<T> factors_;
  std::size_t free_ = 0;
};

// A map given on generators (row convention: generator i of the source goes to
// row i of the matrix). Entries in torsion columns are reduced modulo the
// column's invariant factor. The witness W satisfies A_s * F = W * A_t for the
// relation matrices A_s, A_t.
template <class Ring>
class EuclideanMorphism {
 public:
  using Module = EuclideanModule<Ring>;
  using Mat = la::Mat<Ring>;

  const Module& source() const { return source_; }
  const Module& target() const { return target_; }
  const Mat& matrix() const { return matrix_; }
  const Mat& witness() const { return witness_; }

 private:
  friend class EuclideanCategory<Ring>;
  EuclideanMorphism(Module s, Module t, Mat m, Mat w)
      : source_(std::move(s)), target_(std::move(t)), matrix_(std::move(m)), witness_(std::move(w)) {}

  Module source_, target_;
  Mat matrix_, witness_;
};

// Classical commutative localisation R[1/D], D the product of the determinants
// of the generators; the zero ring when a generator is not square or has
// determinant zero. Used as an independent oracle.
template <class Ring>
class EuclideanOracle {
 public:
  using T = typename Ring::value_type;
  using Module = EuclideanModule<Ring>;
  using Morphism = EuclideanMorphism<Ring>;

  EuclideanOracle(const EuclideanCategory<Ring>& cat, const std::vector<Morphism>& generators);

  bool zero_ring() const { return zero_ring_; }
  // Localisation at a multiplicative set is exact, so kernels may be tested too.
  bool exact() const { return true; }
  const T& denominator() const { return D_; }
  // d with every prime factor shared with D removed.
  T strip(const T& d) const;
  bool is_unit(const T& x) const;
  Survival survives(const Module& m) const;
  Survival survives(const Morphism& f) const;
  // The R-module with the same invariants as M (x) R[1/D]: torsion factors
  // stripped of their D-part, free rank unchanged.
  Module localise(const Module& m) const;
  std::string describe_localised(const Module& m) const;
  std::string describe_ring() const;

 private:
  const EuclideanCategory<Ring>* cat_;
  bool zero_ring_ = false;
  T D_;
};

template <class Ring>
class EuclideanCategory {
 public:
  using T = typename Ring::value_type;
  using Module = EuclideanModule<Ring>;
  using Morphism = EuclideanMorphism<Ring>;
  using Mat = la::Mat<Ring>;
  using Sum = DirectSum<Module, Morphism>;
  using Oracle = EuclideanOracle<Ring>;

  struct Normalised {
    Module module;
    Mat to_canonical;    // old generators -> canonical module
    Mat from_canonical;  // canonical generators -> old generators
  };

  explicit EuclideanCategory(Ring R) : R_(std::move(R)) {}
  const Ring& ring() const { return R_; }
  std::string name() const { return R_.name(); }

  // ----- objects
  Module zero_module() const { return Module(); }
  Module free_module(std::size_t n) const { return Module({}, n); }
  Module ring_module() const { return free_module(1); }
  Module cyclic(const T& d) const { return from_factors({d}, 0); }
  Module from_factors(const std::vector<T>& factors, std::size_t free) const;
  // Normal form of the module with `generators` generators and the given
  // relation rows.
  Normalised normalise(const Mat& relations, std::size_t generators) const;
  Mat relation_matrix(const Module& m) const;
  T modulus(const Module& m, std::size_t j) const {
    return j < m.factors_.size() ? m.factors_[j] : R_.zero();
  }
  bool same_module(const Module& a, const Module& b) const { return a == b; }
  bool is_zero_module(const Module& m) const { return m.is_zero(); }

  // ----- morphisms
  Morphism morphism(const Module& s, const Module& t, Mat m) const;
  Morphism identity(const Module& m) const { return Morphism(m, m, la::identity(R_, m.generators()), la::identity(R_, m.torsion_generators())); }
  Morphism zero_map(const Module& s, const Module& t) const {
    return Morphism(s, t, Mat(s.generators(), t.generators()), Mat(s.torsion_generators(), t.torsion_generators()));
  }
  Morphism compose(const Morphism& f, const Morphism& g) const;
  Morphism add(const Morphism& f, const Morphism& g) const;
  Morphism negate(const Morphism& f) const;
  Morphism scale(const Morphism& f, const T& c) const;
  bool equal(const Morphism& f, const Morphism& g) const {
    return f.source_ == g.source_ && f.target_ == g.target_ && f.matrix_ == g.matrix_;
  }
  bool is_zero(const Morphism& f) const { return la::is_zero(R_, f.matrix_); }

  // ----- abelian structure
  Sum direct_sum(const std::vector<Module>& parts) const;
  Cokernel<Module, Morphism> cokernel(const Morphism& f) const;
  Kernel<Module, Morphism> kernel(const Morphism& f) const;
  Image<Module, Morphism> image(const Morphism& f) const;
  bool is_injective(const Morphism& f) const { return kernel(f).object.is_zero(); }
  bool is_surjective(const Morphism& f) const { return cokernel(f).object.is_zero(); }

  HomGroup<Morphism> hom(const Module& m, const Module& n) const;
  // All combinations of the hom generators, finite-order generators over a full
  // residue system and infinite-order ones over the coefficient window.
  std::vector<Morphism> hom_elements(const Module& m, const Module& n, int window,
                                     std::size_t cap) const;
  Morphism random_morphism(const Module& m, const Module& n, std::mt19937_64& rng,
                           int window) const;
  // h with h.g = f.
  std::optional<Morphism> lift(const Morphism& f, const Morphism& g) const;
  // h with q.h = f.
  std::optional<Morphism> extend(const Morphism& q, const Morphism& f) const;
  Morphism inverse(const Morphism& f) const;
  IsoResult<Morphism> iso_test(const Module& a, const Module& b) const;

  ExtReps<Morphism> ext_reps(const Morphism& sigma, const Module& x, int window,
                             std::size_t cap) const;
  ExtGroup<Module, Morphism> ext1(const Module& m, const Module& n) const;
  Module tor1(const Module& m, const Module& n) const;

  std::optional<long> length(const Module& m) const;
  bool is_projective(const Module& m) const { return m.factors_.empty(); }
  Presentation<Module, Morphism> presentation(const Module& m) const;
  // Finite modules whose order (Integers) or F_p-dimension (polynomials) is at
  // most 2^bound resp. bound, plus the ring itself.
  std::vector<Module> sample_modules(int bound) const;
  // The maps R -> M picking out each generator.
  std::vector<Morphism> element_maps(const Module& m) const;

  Oracle make_oracle(const std::vector<Morphism>& generators) const { return Oracle(*this, generators); }

  std::string describe(const Module& m) const;
  std::string describe(const Morphism& f) const;
  nlohmann::json to_json(const Module& m) const;
  nlohmann::json to_json(const Morphism& f) const;
  Module module_from_json(const nlohmann::json& j) const;
  Morphism morphism_from_json(const nlohmann::json& j) const;
  nlohmann::json matrix_to_json(const Mat& m) const;
  Mat matrix_from_json(const nlohmann::json& j, std::size_t rows, std::size_t cols) const;

 private:
  void reduce_columns(const Module& target, Mat& m) const;
  std::vector<std::vector<T>> coefficient_sets(const HomGroup<Morphism>& h, const Module& m,
                                               const Module& n, int window) const;
  std::vector<T> hom_orders(const Module& m, const Module& n) const;
  Normalised ext_module(const Morphism& sigma, const Module& x) const;
  std::optional<Mat> solve_combination(const std::vector<Mat>& products, const Mat& rhs,
                                       const Module& target,
                                       const std::vector<Morphism>& gens) const;

  Ring R_;
};

// ======================================================================
// Implementation

template <class Ring>
typename EuclideanCategory<Ring>::Normalised EuclideanCategory<Ring>::normalise(
    const Mat& relations, std::size_t generators) const {
  if (relations.rows() == 0) {
    Mat id = la::identity(R_, generators);
    return {free_module(generators), id, id};
  }
  if (relations.cols() != generators) throw ShapeMismatch("relation rows have the wrong width");
  auto f = la::smith(R_, relations);
  std::vector<std::size_t> kept;
  std::vector<T> factors;
  for (std::size_t i = 0; i < f.rank; ++i)
    if (!R_.is_unit(f.D(i, i))) {
      kept.push_back(i);
      factors.push_back(f.D(i, i));
    }
  for (std::size_t i = f.rank; i < generators; ++i) kept.push_back(i);
  Module m(std::move(factors), generators - f.rank);
  Mat to = f.V.select_cols(kept);
  reduce_columns(m, to);
  return {m, to, f.Vinv.select_rows(kept)};
}

template <class Ring>
EuclideanModule<Ring> EuclideanCategory<Ring>::from_factors(const std::vector<T>& factors,
                                                            std::size_t free) const {
  Mat rel(factors.size(), factors.size() + free);
  for (std::size_t i = 0; i < factors.size(); ++i) rel(i, i) = factors[i];
  return normalise(rel, factors.size() + free).module;
}

template <class Ring>
typename EuclideanCategory<Ring>::Mat EuclideanCategory<Ring>::relation_matrix(const Module& m) const {
  Mat rel(m.torsion_generators(), m.generators());
  for (std::size_t i = 0; i < m.factors_.size(); ++i) rel(i, i) = m.factors_[i];
  return rel;
}

template <class Ring>
void EuclideanCategory<Ring>::reduce_columns(const Module& target, Mat& m) const {
  for (std::size_t j = 0; j < target.factors_.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = R_.reduce(m(i, j), target.factors_[j]);
}

template <class Ring>
EuclideanMorphism<Ring> EuclideanCategory<Ring>::morphism(const Module& s, const Module& t,
                                                          Mat m) const {
  if (m.rows() != s.generators() || m.cols() != t.generators())
    throw ShapeMismatch("map matrix is " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + ", expected " +
                        std::to_string(s.generators()) + "x" + std::to_string(t.generators()));
  reduce_columns(t, m);
  Mat w(s.torsion_generators(), t.torsion_generators());
  for (std::size_t i = 0; i < s.factors_.size(); ++i)
    for (std::size_t j = 0; j < t.generators(); ++j) {
      T image = R_.mul(s.factors_[i], m(i, j));
      T e = modulus(t, j);
      if (!R_.divides(e, image))
        throw IllDefinedMorphism("relation " + std::to_string(i) + " is not carried into the "
                                 "relations of the target (column " + std::to_string(j) + ")");
      if (j < t.factors_.size()) w(i, j) = R_.exact_div(image, e);
    }
  return Morphism(s, t, std::move(m), std::move(w));
}

template <class Ring>
EuclideanMorphism<Ring> EuclideanCategory<Ring>::compose(const Morphism& f, const Morphism& g) const {
  if (f.target_ != g.source_) throw ObjectMismatch("composition of non-composable maps");
  return morphism(f.source_, g.target_, la::mul(R_, f.matrix_, g.matrix_));
}

template <class Ring>
EuclideanMorphism<Ring> EuclideanCategory<Ring>::add(const Morphism& f, const Morphism& g) const {
  if (f.source_ != g.source_ || f.target_ != g.target_)
    throw ObjectMismatch("sum of maps with different source or target");
  Mat m = la::add(R_, f.matrix_, g.matrix_);
  return morphism(f.source_, f.target_, std::move(m));
}

template <class Ring>
EuclideanMorphism<Ring> EuclideanCategory<Ring>::negate(const Morphism& f) const {
  return morphism(f.source_, f.target_, la::neg(R_, f.matrix_));
}

template <class Ring>
EuclideanMorphism<Ring> EuclideanCategory<Ring>::scale(const Morphism& f, const T& c) const {
  return morphism(f.source_, f.target_, la::scale(R_, c, f.matrix_));
}

template <class Ring>
typename EuclideanCategory<Ring>::Sum EuclideanCategory<Ring>::direct_sum(
    const std::vector<Module>& parts) const {
  std::size_t rows = 0, cols = 0;
  for (const auto& p : parts) {
    rows += p.torsion_generators();
    cols += p.generators();
  }
  Mat rel(rows, cols);
  std::size_t r = 0, c = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.factors_.size(); ++i) rel(r + i, c + i) = p.factors_[i];
    r += p.torsion_generators();
    c += p.generators();
  }
  Normalised n = normalise(rel, cols);
  Sum s{n.module, {}, {}};
  c = 0;
  for (const auto& p : parts) {
    Mat sel(p.generators(), cols);
    for (std::size_t i = 0; i < p.generators(); ++i) sel(i, c + i) = R_.one();
    s.inclusions.push_back(morphism(p, n.module, la::mul(R_, sel, n.to_canonical)));
    s.projections.push_back(morphism(n.module, p, la::mul(R_, n.from_canonical, sel.transpose())));
    c += p.generators();
  }
  return s;
}

template <class Ring>
Cokernel<EuclideanModule<Ring>, EuclideanMorphism<Ring>> EuclideanCategory<Ring>::cokernel(
    const Morphism& f) const {
  Mat rel = Mat::vstack(relation_matrix(f.target_), f.matrix_);
  Normalised n = normalise(rel, f.target_.generators());
  return {n.module, morphism(f.target_, n.module, n.to_canonical)};
}

template <class Ring>
Kernel<EuclideanModule<Ring>, EuclideanMorphism<Ring>> EuclideanCategory<Ring>::kernel(
    const Morphism& f) const {
  const std::size_t nm = f.source_.generators();
  Mat big = Mat::vstack(f.matrix_, relation_matrix(f.target_));
  Mat y = la::left_kernel(R_, big);
  Mat gens = y.sub(0, 0, y.rows(), nm);
  // Relations among the kernel generators: c with c * gens in the source relations.
  Mat stacked = Mat::vstack(gens, relation_matrix(f.source_));
  Mat z = la::left_kernel(R_, stacked);
  Mat rel = z.sub(0, 0, z.rows(), gens.rows());
  Normalised n = normalise(rel, gens.rows());
  return {n.module, morphism(n.module, f.source_, la::mul(R_, n.from_canonical, gens))};
}

template <class Ring>
Image<EuclideanModule<Ring>, EuclideanMorphism<Ring>> EuclideanCategory<Ring>::image(
    const Morphism& f) const {
  auto k = kernel(f);
  Mat rel = Mat::vstack(relation_matrix(f.source_), k.map.matrix_);
  Normalised n = normalise(rel, f.source_.generators());
  auto epi = morphism(f.source_, n.module, n.to_canonical);
  auto mono = morphism(n.module, f.target_, la::mul(R_, n.from_canonical, f.matrix_));
  return {n.module, epi, mono};
}

template <class Ring>
std::vector<typename Ring::value_type> EuclideanCategory<Ring>::hom_orders(const Module& m,
                                                                           const Module& n) const {
  std::vector<T> orders;
  for (std::size_t i = 0; i < m.generators(); ++i)
    for (std::size_t j = 0; j < n.generators(); ++j) {
      T d = modulus(m, i), e = modulus(n, j);
      if (!R_.is_zero(e)) {
        T g = R_.gcd(d, e);
        if (!R_.is_unit(g)) orders.push_back(g);
      } else if (R_.is_zero(d)) {
        orders.push_back(R_.zero());
      }
    }
  return orders;
}

template <class Ring>
HomGroup<EuclideanMorphism<Ring>> EuclideanCategory<Ring>::hom(const Module& m,
                                                               const Module& n) const {
  HomGroup<Morphism> h;
  for (std::size_t i = 0; i < m.generators(); ++i)
    for (std::size_t j = 0; j < n.generators(); ++j) {
      T d = modulus(m, i), e = modulus(n, j);
      Mat mat(m.generators(), n.generators());
      if (!R_.is_zero(e)) {
        T g = R_.gcd(d, e);
        if (R_.is_unit(g)) continue;
        mat(i, j) = R_.exact_div(e, g);
        h.generators.push_back(morphism(m, n, std::move(mat)));
        h.orders.push_back(R_.to_string(g));
      } else if (R_.is_zero(d)) {
        mat(i, j) = R_.one();
        h.generators.push_back(morphism(m, n, std::move(mat)));
        h.orders.push_back("0");
      }
    }
  return h;
}

template <class Ring>
std::vector<std::vector<typename Ring::value_type>> EuclideanCategory<Ring>::coefficient_sets(
    const HomGroup<Morphism>&, const Module& m, const Module& n, int window) const {
  std::vector<std::vector<T>> sets;
  for (const T& order : hom_orders(m, n))
    sets.push_back(R_.is_zero(order) ? R_.window(window) : R_.residues(order));
  return sets;
}

template <class Ring>
std::vector<EuclideanMorphism<Ring>> EuclideanCategory<Ring>::hom_elements(const Module& m,
                                                                           const Module& n,
                                                                           int window,
                                                                           std::size_t cap) const {
  auto h = hom(m, n);
  auto sets = coefficient_sets(h, m, n, window);
  std::vector<Morphism> out;
  std::vector<std::size_t> idx(sets.size(), 0);
  for (;;) {
    if (out.size() >= cap) break;
    Mat mat(m.generators(), n.generators());
    for (std::size_t k = 0; k < sets.size(); ++k)
      if (!R_.is_zero(sets[k][idx[k]]))
        mat = la::add(R_, mat, la::scale(R_, sets[k][idx[k]], h.generators[k].matrix_));
    out.push_back(morphism(m, n, std::move(mat)));
    std::size_t k = sets.size();
    while (k > 0) {
      --k;
      if (++idx[k] < sets[k].size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
    if (sets.empty()) break;
  }
  return out;
}

template <class Ring>
EuclideanMorphism<Ring> EuclideanCategory<Ring>::random_morphism(const Module& m, const Module& n,
                                                                 std::mt19937_64& rng,
                                                                 int window) const {
  auto h = hom(m, n);
  auto sets = coefficient_sets(h, m, n, window);
  Mat mat(m.generators(), n.generators());
  for (std::size_t k = 0; k < sets.size(); ++k) {
    std::uniform_int_distribution<std::size_t> pick(0, sets[k].size() - 1);
    const T& c = sets[k][pick(rng)];
    if (!R_.is_zero(c)) mat = la::add(R_, mat, la::scale(R_, c, h.generators[k].matrix_));
  }
  return morphism(m, n, std::move(mat));
}

template <class Ring>
std::optional<typename EuclideanCategory<Ring>::Mat> EuclideanCategory<Ring>::solve_combination(
    const std::vector<Mat>& products, const Mat& rhs, const Module& target,
    const std::vector<Morphism>& gens) const {
  // Unknowns: one coefficient per generator, then one slack per (row, torsion
  // column) absorbing multiples of the target's invariant factors.
  const std::size_t rows = rhs.rows(), cols = rhs.cols();
  const std::size_t k = products.size(), tor = target.torsion_generators();
  Mat sys(rows * cols, k + rows * tor);
  Mat b(rows * cols, 1);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      std::size_t eq = i * cols + j;
      for (std::size_t g = 0; g < k; ++g) sys(eq, g) = products[g](i, j);
      if (j < tor) sys(eq, k + i * tor + j) = target.factors_[j];
      b(eq, 0) = rhs(i, j);
    }
  auto x = la::solve(R_, sys, b);
  if (!x) return std::nullopt;
  Mat out(gens[0].matrix_.rows(), gens[0].matrix_.cols());
  for (std::size_t g = 0; g < k; ++g)
    if (!R_.is_zero((*x)(g, 0))) out = la::add(R_, out, la::scale(R_, (*x)(g, 0), gens[g].matrix_));
  return out;
}

template <class Ring>
std::optional<EuclideanMorphism<Ring>> EuclideanCategory<Ring>::lift(const Morphism& f,
                                                                     const Morphism& g) const {
  if (f.target_ != g.target_) throw ObjectMismatch("lift: maps have different targets");
  auto h = hom(f.source_, g.source_);
  if (h.generators.empty())
    return is_zero(f) ? std::optional<Morphism>(zero_map(f.source_, g.source_)) : std::nullopt;
  std::vector<Mat> products;
  for (const auto& x : h.generators) products.push_back(la::mul(R_, x.matrix_, g.matrix_));
  auto sol = solve_combination(products, f.matrix_, f.target_, h.generators);
  if (!sol) return std::nullopt;
  return morphism(f.source_, g.source_, std::move(*sol));
}

template <class Ring>
std::optional<EuclideanMorphism<Ring>> EuclideanCategory<Ring>::extend(const Morphism& q,
                                                                       const Morphism& f) const {
  if (q.source_ != f.source_) throw ObjectMismatch("extend: maps have different sources");
  auto h = hom(q.target_, f.target_);
  if (h.generators.empty())
    return is_zero(f) ? std::optional<Morphism>(zero_map(q.target_, f.target_)) : std::nullopt;
  std::vector<Mat> products;
  for (const auto& x : h.generators) products.push_back(la::mul(R_, q.matrix_, x.matrix_));
  auto sol = solve_combination(products, f.matrix_, f.target_, h.generators);
  if (!sol) return std::nullopt;
  return morphism(q.target_, f.target_, std::move(*sol));
}

template <class Ring>
EuclideanMorphism<Ring> EuclideanCategory<Ring>::inverse(const Morphism& f) const {
  auto h = extend(f, identity(f.source_));
  if (!h || !equal(compose(*h, f), identity(f.target_)))
    throw VerificationFailure("map is not an isomorphism");
  return *h;
}

template <class Ring>
IsoResult<EuclideanMorphism<Ring>> EuclideanCategory<Ring>::iso_test(const Module& a,
                                                                     const Module& b) const {
  if (a == b) return {Verdict::Yes, identity(a)};
  return {Verdict::No, std::nullopt};
}

template <class Ring>
typename EuclideanCategory<Ring>::Normalised EuclideanCategory<Ring>::ext_module(
    const Morphism& sigma, const Module& x) const {
  // Hom(P, X) = X^r for P of rank r, modulo the image of Hom(Q, X) = X^q.
  if (!is_projective(sigma.source_) || !is_projective(sigma.target_))
    throw ObjectMismatch("ext: the presentation must be a map between projectives");
  const std::size_t r = sigma.source_.generators(), q = sigma.target_.generators();
  const std::size_t nx = x.generators(), kx = x.torsion_generators();
  Mat rel(r * kx + q * nx, r * nx);
  std::size_t row_i = 0;
  for (std::size_t p = 0; p < r; ++p)
    for (std::size_t i = 0; i < kx; ++i) rel(row_i++, p * nx + i) = x.factors_[i];
  for (std::size_t l = 0; l < q; ++l)
    for (std::size_t b = 0; b < nx; ++b) {
      for (std::size_t p = 0; p < r; ++p) rel(row_i, p * nx + b) = sigma.matrix_(p, l);
      ++row_i;
    }
  return normalise(rel, r * nx);
}

template <class Ring>
ExtReps<EuclideanMorphism<Ring>> EuclideanCategory<Ring>::ext_reps(const Morphism& sigma,
                                                                   const Module& x, int window,
                                                                   std::size_t cap) const {
  Normalised e = ext_module(sigma, x);
  ExtReps<Morphism> out;
  for (const T& d : e.module.factors_) out.invariants.push_back(R_.to_string(d));
  for (std::size_t i = 0; i < e.module.free_; ++i) out.invariants.push_back("0");
  std::vector<std::vector<T>> sets;
  for (std::size_t i = 0; i < e.module.generators(); ++i)
    sets.push_back(i < e.module.factors_.size() ? R_.residues(e.module.factors_[i]) : R_.window(window));
  if (e.module.free_ > 0) out.complete = false;
  const std::size_t r = sigma.source_.generators(), nx = x.generators();
  std::vector<std::size_t> idx(sets.size(), 0);
  for (;;) {
    if (out.reps.size() >= cap) {
      out.complete = false;
      break;
    }
    Mat coords(1, e.module.generators());
    for (std::size_t k = 0; k < sets.size(); ++k) coords(0, k) = sets[k][idx[k]];
    Mat raw = la::mul(R_, coords, e.from_canonical);
    Mat j(r, nx);
    for (std::size_t p = 0; p < r; ++p)
      for (std::size_t b = 0; b < nx; ++b) j(p, b) = raw(0, p * nx + b);
    out.reps.push_back(morphism(sigma.source_, x, std::move(j)));
    if (sets.empty()) break;
    std::size_t k = sets.size();
    bool done = false;
    while (k > 0) {
      --k;
      if (++idx[k] < sets[k].size()) break;
      idx[k] = 0;
      if (k == 0) done = true;
    }
    if (done) break;
  }
  return out;
}

template <class Ring>
ExtGroup<EuclideanModule<Ring>, EuclideanMorphism<Ring>> EuclideanCategory<Ring>::ext1(
    const Module& m, const Module& n) const {
  auto pres = presentation(m);
  Normalised e = ext_module(pres.sigma, n);
  ExtGroup<Module, Morphism> out;
  const std::size_t r = pres.sigma.source_.generators(), nx = n.generators();
  for (std::size_t g = 0; g < e.module.generators(); ++g) {
    out.invariants.push_back(g < e.module.factors_.size() ? R_.to_string(e.module.factors_[g]) : "0");
    Mat j(r, nx);
    for (std::size_t p = 0; p < r; ++p)
      for (std::size_t b = 0; b < nx; ++b) j(p, b) = e.from_canonical(g, p * nx + b);
    auto cls = morphism(pres.sigma.source_, n, std::move(j));
    out.middles.push_back(pushout(*this, pres.sigma, cls).object);
    out.generators.push_back(std::move(cls));
  }
  return out;
}

template <class Ring>
EuclideanModule<Ring> EuclideanCategory<Ring>::tor1(const Module& m, const Module& n) const {
  auto pres = presentation(m);
  const std::size_t k = pres.sigma.source_.generators(), g = pres.sigma.target_.generators();
  auto src = direct_sum(std::vector<Module>(k, n));
  auto tgt = direct_sum(std::vector<Module>(g, n));
  std::vector<std::vector<std::optional<Morphism>>> blocks(k, std::vector<std::optional<Morphism>>(g));
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t l = 0; l < g; ++l)
      if (!R_.is_zero(pres.sigma.matrix_(p, l))) blocks[p][l] = scale(identity(n), pres.sigma.matrix_(p, l));
  return kernel(block(*this, src, tgt, blocks)).object;
}

template <class Ring>
std::optional<long> EuclideanCategory<Ring>::length(const Module& m) const {
  if (m.free_ > 0) return std::nullopt;
  long total = 0;
  for (const T& d : m.factors_) total += R_.length(d);
  return total;
}

template <class Ring>
Presentation<EuclideanModule<Ring>, EuclideanMorphism<Ring>> EuclideanCategory<Ring>::presentation(
    const Module& m) const {
  const std::size_t k = m.torsion_generators(), n = m.generators();
  Mat s(k, n);
  for (std::size_t i = 0; i < k; ++i) s(i, i) = m.factors_[i];
  return {morphism(free_module(k), free_module(n), std::move(s)),
          morphism(free_module(n), m, la::identity(R_, n))};
}

template <class Ring>
std::vector<EuclideanModule<Ring>> EuclideanCategory<Ring>::sample_modules(int bound) const {
  // Candidate invariant factors with their "size" (order or p^degree).
  std::vector<std::pair<T, BigInt>> cands;
  BigInt limit;
  if constexpr (std::is_same_v<Ring, IntegerRing>) {
    limit = BigInt(1) << bound;
    for (long d = 2; d <= limit.get_si(); ++d) cands.push_back({R_.from_int(d), BigInt(d)});
  } else {
    limit = 1;
    for (int i = 0; i < bound; ++i) limit *= R_.characteristic();
    for (int deg = 1; deg <= bound; ++deg)
      for (const T& low : R_.window(deg)) {
        T f = R_.add(low, R_.monomial(deg));
        BigInt size = 1;
        for (int i = 0; i < deg; ++i) size *= R_.characteristic();
        cands.push_back({f, size});
      }
  }
  std::vector<Module> out;
  std::vector<T> chain;
  std::function<void(std::size_t, BigInt)> rec = [&](std::size_t start, BigInt size) {
    for (std::size_t c = start; c < cands.size(); ++c) {
      if (size * cands[c].second > limit) continue;
      if (!chain.empty() && !R_.divides(chain.back(), cands[c].first)) continue;
      chain.push_back(cands[c].first);
      out.push_back(Module(chain, 0));
      rec(c, size * cands[c].second);
      chain.pop_back();
    }
  };
  rec(0, BigInt(1));
  out.push_back(ring_module());
  return out;
}

template <class Ring>
std::vector<EuclideanMorphism<Ring>> EuclideanCategory<Ring>::element_maps(const Module& m) const {
  std::vector<Morphism> out;
  for (std::size_t i = 0; i < m.generators(); ++i) {
    Mat e(1, m.generators());
    e(0, i) = R_.one();
    out.push_back(morphism(ring_module(), m, std::move(e)));
  }
  return out;
}

template <class Ring>
std::string EuclideanCategory<Ring>::describe(const Module& m) const {
  if (m.is_zero()) return "0";
  std::string base;
  if constexpr (std::is_same_v<Ring, IntegerRing>) {
    base = "Z";
  } else {
    base = "F" + std::to_string(R_.characteristic()) + "[x]";
  }
  std::string s;
  for (const T& d : m.factors_) {
    if (!s.empty()) s += " + ";
    if constexpr (std::is_same_v<Ring, IntegerRing>)
      s += base + "/" + R_.to_string(d);
    else
      s += base + "/(" + R_.to_string(d) + ")";
  }
  if (m.free_ > 0) {
    if (!s.empty()) s += " + ";
    s += base;
    if (m.free_ > 1) s += "^" + std::to_string(m.free_);
  }
  return s;
}

template <class Ring>
std::string EuclideanCategory<Ring>::describe(const Morphism& f) const {
  std::string s = describe(f.source_) + " -> " + describe(f.target_) + " [";
  for (std::size_t i = 0; i < f.matrix_.rows(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < f.matrix_.cols(); ++j) {
      if (j) s += " ";
      s += R_.to_string(f.matrix_(i, j));
    }
  }
  return s + "]";
}

template <class Ring>
nlohmann::json EuclideanCategory<Ring>::matrix_to_json(const Mat& m) const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(R_.to_json(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

template <class Ring>
typename EuclideanCategory<Ring>::Mat EuclideanCategory<Ring>::matrix_from_json(
    const nlohmann::json& j, std::size_t rows, std::size_t cols) const {
  if (!j.is_array() || j.size() != rows)
    throw ParseError("expected a matrix with " + std::to_string(rows) + " rows, got " + j.dump());
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw ParseError("matrix row " + std::to_string(i) + " should have " + std::to_string(cols) +
                       " entries: " + j[i].dump());
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = R_.from_json(j[i][c]);
  }
  return m;
}

template <class Ring>
nlohmann::json EuclideanCategory<Ring>::to_json(const Module& m) const {
  nlohmann::json f = nlohmann::json::array();
  for (const T& d : m.factors_) f.push_back(R_.to_json(d));
  return {{"factors", f}, {"free", m.free_}};
}

template <class Ring>
nlohmann::json EuclideanCategory<Ring>::to_json(const Morphism& f) const {
  return {{"source", to_json(f.source_)}, {"target", to_json(f.target_)}, {"matrix", matrix_to_json(f.matrix_)}};
}

template <class Ring>
EuclideanModule<Ring> EuclideanCategory<Ring>::module_from_json(const nlohmann::json& j) const {
  if (!j.is_object() || !j.contains("factors"))
    throw ParseError("expected a normalised module {factors, free}: " + j.dump());
  std::vector<T> factors;
  for (const auto& d : j.at("factors")) factors.push_back(R_.from_json(d));
  std::size_t free = j.value("free", std::size_t{0});
  Module m = from_factors(factors, free);
  if (m.factors_ != factors) throw ParseError("module is not in normal form: " + j.dump());
  return m;
}

template <class Ring>
EuclideanMorphism<Ring> EuclideanCategory<Ring>::morphism_from_json(const nlohmann::json& j) const {
  Module s = module_from_json(j.at("source"));
  Module t = module_from_json(j.at("target"));
  return morphism(s, t, matrix_from_json(j.at("matrix"), s.generators(), t.generators()));
}

// ----- oracle

template <class Ring>
EuclideanOracle<Ring>::EuclideanOracle(const EuclideanCategory<Ring>& cat,
                                       const std::vector<Morphism>& generators)
    : cat_(&cat), D_(cat.ring().one()) {
  const Ring& R = cat.ring();
  for (const auto& g : generators) {
    const auto& m = g.matrix();
    if (m.rows() != m.cols()) {
      zero_ring_ = true;
      continue;
    }
    auto f = la::smith(R, m);
    if (f.rank < m.rows()) {
      zero_ring_ = true;
      continue;
    }
    for (std::size_t i = 0; i < f.rank; ++i) D_ = R.mul(D_, f.D(i, i));
  }
  D_ = R.normalize(D_);
}

template <class Ring>
typename Ring::value_type EuclideanOracle<Ring>::strip(const T& d) const {
  const Ring& R = cat_->ring();
  T x = R.normalize(d);
  if (R.is_zero(x)) return x;
  for (;;) {
    T g = R.gcd(x, D_);
    if (R.is_unit(g)) return x;
    x = R.exact_div(x, g);
  }
}

template <class Ring>
bool EuclideanOracle<Ring>::is_unit(const T& x) const {
  if (zero_ring_) return true;
  const Ring& R = cat_->ring();
  return !R.is_zero(x) && R.is_unit(strip(x));
}

template <class Ring>
Survival EuclideanOracle<Ring>::survives(const Module& m) const {
  if (zero_ring_) return Survival::Killed;
  if (m.free_rank() > 0) return Survival::Survives;
  for (const T& d : m.factors())
    if (!is_unit(d)) return Survival::Survives;
  return Survival::Killed;
}

template <class Ring>
Survival EuclideanOracle<Ring>::survives(const Morphism& f) const {
  return survives(cat_->image(f).object);
}

template <class Ring>
EuclideanModule<Ring> EuclideanOracle<Ring>::localise(const Module& m) const {
  if (zero_ring_) return cat_->zero_module();
  std::vector<T> factors;
  for (const T& d : m.factors()) factors.push_back(strip(d));
  return cat_->from_factors(factors, m.free_rank());
}

template <class Ring>
std::string EuclideanOracle<Ring>::describe_ring() const {
  if (zero_ring_) return "0";
  const Ring& R = cat_->ring();
  std::string base;
  if constexpr (std::is_same_v<Ring, IntegerRing>)
    base = "Z";
  else
    base = "F" + std::to_string(R.characteristic()) + "[x]";
  if (R.is_unit(D_)) return base;
  return base + "[1/" + R.to_string(D_) + "]";
}

template <class Ring>
std::string EuclideanOracle<Ring>::describe_localised(const Module& m) const {
  Module l = localise(m);
  if (l.is_zero()) return "0";
  std::string s;
  Module torsion = cat_->from_factors(l.factors(), 0);
  if (!torsion.is_zero()) s = cat_->describe(torsion);
  if (l.free_rank() > 0) {
    if (!s.empty()) s += " + ";
    s += describe_ring();
    if (l.free_rank() > 1) s += "^" + std::to_string(l.free_rank());
  }
  return s;
}

extern template class EuclideanCategory<IntegerRing>;
extern template class EuclideanCategory<PolyRing>;
extern template class EuclideanOracle<IntegerRing>;
extern template class EuclideanOracle<PolyRing>;

using IntegerCategory = EuclideanCategory<IntegerRing>;
using PolyCategory = EuclideanCategory<PolyRing>;

}  // namespace uloc
