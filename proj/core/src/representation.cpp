#include "uloc/representation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace uloc {

namespace {

std::string dims_string(const std::vector<std::size_t>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

}  // namespace

std::size_t Representation::total_dim() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0});
}

QuiverCategory::QuiverCategory(QuiverShape shape, std::uint32_t p, std::size_t iso_dimension_cap,
                               std::uint64_t seed)
    : shape_(std::move(shape)), F_(p), iso_cap_(iso_dimension_cap), seed_(seed) {}

// ---------------------------------------------------------------- objects

Representation QuiverCategory::representation(std::vector<std::size_t> dims,
                                              std::vector<FpMatrix> arrows) const {
  const auto& as = shape_.arrows();
  if (dims.size() != shape_.vertex_count())
    throw ShapeMismatch("representation has " + std::to_string(dims.size()) +
                        " dimensions for a quiver with " +
                        std::to_string(shape_.vertex_count()) + " vertices");
  if (arrows.size() != as.size())
    throw ShapeMismatch("representation has " + std::to_string(arrows.size()) +
                        " arrow matrices for " + std::to_string(as.size()) + " arrows");
  for (std::size_t a = 0; a < as.size(); ++a) {
    auto& m = arrows[a];
    if (m.rows() != dims[as[a].source] || m.cols() != dims[as[a].target])
      throw ShapeMismatch("arrow " + std::to_string(a + 1) + " matrix is " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                          ", expected " + std::to_string(dims[as[a].source]) + "x" +
                          std::to_string(dims[as[a].target]));
    for (auto& x : m.data()) x %= F_.characteristic();
  }
  return Representation(std::move(dims), std::move(arrows));
}

Representation QuiverCategory::zero_module() const {
  std::vector<std::size_t> d(shape_.vertex_count(), 0);
  std::vector<FpMatrix> a(shape_.arrows().size(), FpMatrix(0, 0));
  return Representation(std::move(d), std::move(a));
}

Representation QuiverCategory::projective(std::size_t v) const {
  const std::size_t n = shape_.vertex_count();
  std::vector<std::size_t> d(n);
  for (std::size_t w = 0; w < n; ++w) d[w] = shape_.path_count(v, w);
  std::vector<FpMatrix> arrows;
  for (std::size_t ai = 0; ai < shape_.arrows().size(); ++ai) {
    const Arrow& a = shape_.arrows()[ai];
    FpMatrix m(d[a.source], d[a.target]);
    const auto& from = shape_.paths(v, a.source);
    for (std::size_t i = 0; i < from.size(); ++i) {
      Path q = from[i];
      q.push_back(ai);
      m(i, shape_.path_index(v, q)) = 1;
    }
    arrows.push_back(std::move(m));
  }
  return Representation(std::move(d), std::move(arrows));
}

Representation QuiverCategory::simple(std::size_t v) const {
  std::vector<std::size_t> d(shape_.vertex_count(), 0);
  d.at(v) = 1;
  std::vector<FpMatrix> arrows;
  for (const auto& a : shape_.arrows()) arrows.emplace_back(d[a.source], d[a.target]);
  return Representation(std::move(d), std::move(arrows));
}

Representation QuiverCategory::ring_module() const {
  std::vector<Representation> parts;
  for (std::size_t v = 0; v < shape_.vertex_count(); ++v) parts.push_back(projective(v));
  return direct_sum(parts).object;
}

// ---------------------------------------------------------------- morphisms

RepMorphism QuiverCategory::morphism(const Representation& s, const Representation& t,
                                     std::vector<FpMatrix> maps) const {
  const std::size_t n = shape_.vertex_count();
  if (maps.size() != n)
    throw ShapeMismatch("morphism has " + std::to_string(maps.size()) + " components for " +
                        std::to_string(n) + " vertices");
  for (std::size_t v = 0; v < n; ++v) {
    if (maps[v].rows() != s.dim(v) || maps[v].cols() != t.dim(v))
      throw ShapeMismatch("component at vertex " + std::to_string(v + 1) + " is " +
                          std::to_string(maps[v].rows()) + "x" + std::to_string(maps[v].cols()) +
                          ", expected " + std::to_string(s.dim(v)) + "x" +
                          std::to_string(t.dim(v)));
    for (auto& x : maps[v].data()) x %= F_.characteristic();
  }
  const auto& as = shape_.arrows();
  for (std::size_t a = 0; a < as.size(); ++a) {
    auto lhs = la::mul(F_, s.arrow(a), maps[as[a].target]);
    auto rhs = la::mul(F_, maps[as[a].source], t.arrow(a));
    if (!(lhs == rhs))
      throw IllDefinedMorphism("components do not commute with arrow " + std::to_string(a + 1));
  }
  return RepMorphism(s, t, std::move(maps));
}

RepMorphism QuiverCategory::yoneda(std::size_t v, const Representation& x,
                                   const FpMatrix& element) const {
  if (element.rows() != 1 || element.cols() != x.dim(v))
    throw ShapeMismatch("element must be a row vector of length " + std::to_string(x.dim(v)));
  Representation pv = projective(v);
  std::vector<FpMatrix> maps;
  for (std::size_t w = 0; w < shape_.vertex_count(); ++w) {
    FpMatrix m(pv.dim(w), x.dim(w));
    const auto& ps = shape_.paths(v, w);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      FpMatrix row = element;
      for (std::size_t a : ps[i]) row = la::mul(F_, row, x.arrow(a));
      m.set_block(i, 0, row);
    }
    maps.push_back(std::move(m));
  }
  return morphism(pv, x, std::move(maps));
}

RepMorphism QuiverCategory::identity(const Representation& m) const {
  std::vector<FpMatrix> maps;
  for (std::size_t v = 0; v < shape_.vertex_count(); ++v) maps.push_back(la::identity(F_, m.dim(v)));
  return RepMorphism(m, m, std::move(maps));
}

RepMorphism QuiverCategory::zero_map(const Representation& s, const Representation& t) const {
  std::vector<FpMatrix> maps;
  for (std::size_t v = 0; v < shape_.vertex_count(); ++v) maps.emplace_back(s.dim(v), t.dim(v));
  return RepMorphism(s, t, std::move(maps));
}

RepMorphism QuiverCategory::compose(const RepMorphism& f, const RepMorphism& g) const {
  if (f.target() != g.source())
    throw ObjectMismatch("compose: target of the first map is not the source of the second");
  std::vector<FpMatrix> maps;
  for (std::size_t v = 0; v < shape_.vertex_count(); ++v)
    maps.push_back(la::mul(F_, f.map(v), g.map(v)));
  return RepMorphism(f.source(), g.target(), std::move(maps));
}

RepMorphism QuiverCategory::add(const RepMorphism& f, const RepMorphism& g) const {
  if (f.source() != g.source() || f.target() != g.target())
    throw ObjectMismatch("add: maps have different sources or targets");
  std::vector<FpMatrix> maps;
  for (std::size_t v = 0; v < shape_.vertex_count(); ++v)
    maps.push_back(la::add(F_, f.map(v), g.map(v)));
  return RepMorphism(f.source(), f.target(), std::move(maps));
}

RepMorphism QuiverCategory::negate(const RepMorphism& f) const {
  std::vector<FpMatrix> maps;
  for (const auto& m : f.maps()) maps.push_back(la::neg(F_, m));
  return RepMorphism(f.source(), f.target(), std::move(maps));
}

RepMorphism QuiverCategory::scale(const RepMorphism& f, std::uint32_t c) const {
  std::vector<FpMatrix> maps;
  for (const auto& m : f.maps()) maps.push_back(la::scale(F_, c % F_.characteristic(), m));
  return RepMorphism(f.source(), f.target(), std::move(maps));
}

bool QuiverCategory::equal(const RepMorphism& f, const RepMorphism& g) const {
  return f.source() == g.source() && f.target() == g.target() && f.maps() == g.maps();
}

bool QuiverCategory::is_zero(const RepMorphism& f) const {
  for (const auto& m : f.maps())
    if (!la::is_zero(F_, m)) return false;
  return true;
}

// ---------------------------------------------------------------- abelian structure

QuiverCategory::Sum QuiverCategory::direct_sum(const std::vector<Representation>& parts) const {
  const std::size_t n = shape_.vertex_count();
  const auto& as = shape_.arrows();
  std::vector<std::size_t> dims(n, 0);
  for (const auto& p : parts)
    for (std::size_t v = 0; v < n; ++v) dims[v] += p.dim(v);
  std::vector<FpMatrix> arrows;
  for (std::size_t a = 0; a < as.size(); ++a) {
    FpMatrix m(dims[as[a].source], dims[as[a].target]);
    std::size_t r = 0, c = 0;
    for (const auto& p : parts) {
      m.set_block(r, c, p.arrow(a));
      r += p.dim(as[a].source);
      c += p.dim(as[a].target);
    }
    arrows.push_back(std::move(m));
  }
  Representation sum(dims, std::move(arrows));
  Sum out{sum, {}, {}};
  std::vector<std::size_t> off(n, 0);
  for (const auto& p : parts) {
    std::vector<FpMatrix> inc, proj;
    for (std::size_t v = 0; v < n; ++v) {
      FpMatrix i(p.dim(v), dims[v]);
      for (std::size_t k = 0; k < p.dim(v); ++k) i(k, off[v] + k) = 1;
      proj.push_back(i.transpose());
      inc.push_back(std::move(i));
      off[v] += p.dim(v);
    }
    out.inclusions.push_back(RepMorphism(p, sum, std::move(inc)));
    out.projections.push_back(RepMorphism(sum, p, std::move(proj)));
  }
  return out;
}

Cokernel<Representation, RepMorphism> QuiverCategory::cokernel(const RepMorphism& f) const {
  const std::size_t n = shape_.vertex_count();
  const auto& as = shape_.arrows();
  std::vector<FpMatrix> q(n), section(n);
  std::vector<std::size_t> dims(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto s = la::smith(F_, f.map(v));
    const std::size_t d = f.target().dim(v);
    dims[v] = d - s.rank;
    q[v] = s.V.sub(0, s.rank, d, dims[v]);
    section[v] = s.Vinv.sub(s.rank, 0, dims[v], d);
  }
  std::vector<FpMatrix> arrows;
  for (std::size_t a = 0; a < as.size(); ++a)
    arrows.push_back(la::mul(F_, la::mul(F_, section[as[a].source], f.target().arrow(a)),
                             q[as[a].target]));
  Representation c(std::move(dims), std::move(arrows));
  return {c, morphism(f.target(), c, std::move(q))};
}

Kernel<Representation, RepMorphism> QuiverCategory::kernel(const RepMorphism& f) const {
  const std::size_t n = shape_.vertex_count();
  const auto& as = shape_.arrows();
  std::vector<FpMatrix> k(n);
  std::vector<std::size_t> dims(n);
  for (std::size_t v = 0; v < n; ++v) {
    k[v] = la::left_kernel(F_, f.map(v));
    dims[v] = k[v].rows();
  }
  std::vector<FpMatrix> arrows;
  for (std::size_t a = 0; a < as.size(); ++a) {
    auto img = la::mul(F_, k[as[a].source], f.source().arrow(a));
    auto y = la::solve_left(F_, k[as[a].target], img);
    if (!y) throw VerificationFailure("kernel is not closed under an arrow");
    arrows.push_back(std::move(*y));
  }
  Representation kr(std::move(dims), std::move(arrows));
  return {kr, morphism(kr, f.source(), std::move(k))};
}

Image<Representation, RepMorphism> QuiverCategory::image(const RepMorphism& f) const {
  auto ker = kernel(f);
  auto ck = cokernel(ker.map);
  std::vector<FpMatrix> mono;
  for (std::size_t v = 0; v < shape_.vertex_count(); ++v) {
    auto s = la::smith(F_, ker.map.map(v));
    const std::size_t d = f.source().dim(v);
    mono.push_back(la::mul(F_, s.Vinv.sub(s.rank, 0, d - s.rank, d), f.map(v)));
  }
  return {ck.object, ck.map, morphism(ck.object, f.target(), std::move(mono))};
}

bool QuiverCategory::is_injective(const RepMorphism& f) const {
  for (const auto& m : f.maps())
    if (la::rank(F_, m) != m.rows()) return false;
  return true;
}

bool QuiverCategory::is_surjective(const RepMorphism& f) const {
  for (const auto& m : f.maps())
    if (la::rank(F_, m) != m.cols()) return false;
  return true;
}

// ---------------------------------------------------------------- Hom

std::vector<RepMorphism> QuiverCategory::hom_basis(const Representation& m,
                                                   const Representation& n) const {
  const std::size_t nv = shape_.vertex_count();
  const auto& as = shape_.arrows();
  std::vector<std::size_t> off(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) off[v + 1] = off[v] + m.dim(v) * n.dim(v);
  const std::size_t unknowns = off[nv];
  if (unknowns == 0) return {};

  std::size_t eqs = 0;
  for (const auto& a : as) eqs += m.dim(a.source) * n.dim(a.target);
  // A_a phi_t - phi_s B_a = 0, entry (i, j).
  FpMatrix E(eqs, unknowns);
  std::size_t row = 0;
  for (std::size_t ai = 0; ai < as.size(); ++ai) {
    const std::size_t s = as[ai].source, t = as[ai].target;
    const FpMatrix& A = m.arrow(ai);
    const FpMatrix& B = n.arrow(ai);
    for (std::size_t i = 0; i < m.dim(s); ++i)
      for (std::size_t j = 0; j < n.dim(t); ++j, ++row) {
        for (std::size_t k = 0; k < m.dim(t); ++k)
          E(row, off[t] + k * n.dim(t) + j) = F_.add(E(row, off[t] + k * n.dim(t) + j), A(i, k));
        for (std::size_t l = 0; l < n.dim(s); ++l)
          E(row, off[s] + i * n.dim(s) + l) =
              F_.sub(E(row, off[s] + i * n.dim(s) + l), B(l, j));
      }
  }
  FpMatrix K = la::right_kernel(F_, E);
  std::vector<RepMorphism> out;
  for (std::size_t c = 0; c < K.cols(); ++c) {
    std::vector<FpMatrix> maps;
    for (std::size_t v = 0; v < nv; ++v) {
      FpMatrix phi(m.dim(v), n.dim(v));
      for (std::size_t i = 0; i < m.dim(v); ++i)
        for (std::size_t j = 0; j < n.dim(v); ++j) phi(i, j) = K(off[v] + i * n.dim(v) + j, c);
      maps.push_back(std::move(phi));
    }
    out.push_back(morphism(m, n, std::move(maps)));
  }
  return out;
}

HomGroup<RepMorphism> QuiverCategory::hom(const Representation& m, const Representation& n) const {
  HomGroup<RepMorphism> h;
  h.generators = hom_basis(m, n);
  h.orders.assign(h.generators.size(), std::to_string(F_.characteristic()));
  return h;
}

RepMorphism QuiverCategory::combine(const std::vector<RepMorphism>& basis, const FpMatrix& coords,
                                    const Representation& s, const Representation& t) const {
  RepMorphism out = zero_map(s, t);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coords(i, 0) != 0) out = add(out, scale(basis[i], coords(i, 0)));
  return out;
}

std::vector<RepMorphism> QuiverCategory::hom_elements(const Representation& m,
                                                      const Representation& n, int window,
                                                      std::size_t cap) const {
  auto basis = hom_basis(m, n);
  auto coeffs = F_.window(window);
  std::vector<RepMorphism> out;
  std::vector<std::size_t> idx(basis.size(), 0);
  while (out.size() < cap) {
    FpMatrix c(basis.size(), 1);
    for (std::size_t i = 0; i < basis.size(); ++i) c(i, 0) = coeffs[idx[i]];
    out.push_back(combine(basis, c, m, n));
    std::size_t k = basis.size();
    while (k > 0) {
      if (++idx[k - 1] < coeffs.size()) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  return out;
}

RepMorphism QuiverCategory::random_morphism(const Representation& m, const Representation& n,
                                            std::mt19937_64& rng, int) const {
  auto basis = hom_basis(m, n);
  std::uniform_int_distribution<std::uint32_t> d(0, F_.characteristic() - 1);
  FpMatrix c(basis.size(), 1);
  for (std::size_t i = 0; i < basis.size(); ++i) c(i, 0) = d(rng);
  return combine(basis, c, m, n);
}

FpMatrix QuiverCategory::flatten(const RepMorphism& f) const {
  std::size_t total = 0;
  for (const auto& m : f.maps()) total += m.rows() * m.cols();
  FpMatrix out(total, 1);
  std::size_t r = 0;
  for (const auto& m : f.maps())
    for (auto x : m.data()) out(r++, 0) = x;
  return out;
}

std::optional<FpMatrix> QuiverCategory::solve_coordinates(const std::vector<RepMorphism>& vectors,
                                                          const FpMatrix& target) const {
  FpMatrix A(target.rows(), vectors.size());
  for (std::size_t k = 0; k < vectors.size(); ++k) A.set_block(0, k, flatten(vectors[k]));
  return la::solve(F_, A, target);
}

std::optional<RepMorphism> QuiverCategory::lift(const RepMorphism& f, const RepMorphism& g) const {
  if (f.target() != g.target()) throw ObjectMismatch("lift: maps have different targets");
  auto basis = hom_basis(f.source(), g.source());
  std::vector<RepMorphism> images;
  for (const auto& h : basis) images.push_back(compose(h, g));
  auto c = solve_coordinates(images, flatten(f));
  if (!c) return std::nullopt;
  return combine(basis, *c, f.source(), g.source());
}

std::optional<RepMorphism> QuiverCategory::extend(const RepMorphism& q, const RepMorphism& f) const {
  if (q.source() != f.source()) throw SourceMismatch("extend: maps have different sources");
  auto basis = hom_basis(q.target(), f.target());
  std::vector<RepMorphism> images;
  for (const auto& h : basis) images.push_back(compose(q, h));
  auto c = solve_coordinates(images, flatten(f));
  if (!c) return std::nullopt;
  return combine(basis, *c, q.target(), f.target());
}

bool QuiverCategory::is_invertible(const RepMorphism& f) const {
  for (const auto& m : f.maps())
    if (m.rows() != m.cols() || la::rank(F_, m) != m.rows()) return false;
  return true;
}

RepMorphism QuiverCategory::inverse(const RepMorphism& f) const {
  if (!is_invertible(f)) throw VerificationFailure("map is not an isomorphism");
  std::vector<FpMatrix> inv;
  for (const auto& m : f.maps())
    inv.push_back(*la::solve(F_, m, la::identity(F_, m.rows())));
  return morphism(f.target(), f.source(), std::move(inv));
}

IsoResult<RepMorphism> QuiverCategory::iso_test(const Representation& a,
                                                const Representation& b) const {
  if (a.dims() != b.dims()) return {Verdict::No, std::nullopt};
  if (a == b) return {Verdict::Yes, identity(a)};
  auto basis = hom_basis(a, b);
  if (basis.size() != hom_basis(a, a).size() || basis.size() != hom_basis(b, b).size())
    return {Verdict::No, std::nullopt};
  if (basis.empty()) return {Verdict::No, std::nullopt};

  std::mt19937_64 rng(seed_);
  std::uniform_int_distribution<std::uint32_t> d(0, F_.characteristic() - 1);
  FpMatrix c(basis.size(), 1);
  for (int trial = 0; trial < 64; ++trial) {
    for (std::size_t i = 0; i < basis.size(); ++i) c(i, 0) = d(rng);
    auto f = combine(basis, c, a, b);
    if (is_invertible(f)) return {Verdict::Yes, f};
  }
  double space = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) space *= F_.characteristic();
  if (a.total_dim() > iso_cap_ || space > 65536) return {Verdict::Unknown, std::nullopt};
  std::vector<std::uint32_t> idx(basis.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < basis.size(); ++i) c(i, 0) = idx[i];
    auto f = combine(basis, c, a, b);
    if (is_invertible(f)) return {Verdict::Yes, f};
    std::size_t k = basis.size();
    while (k > 0) {
      if (++idx[k - 1] < F_.characteristic()) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  return {Verdict::No, std::nullopt};
}

// ---------------------------------------------------------------- Ext

QuiverCategory::ExtBasis QuiverCategory::ext_basis(const RepMorphism& sigma,
                                                   const Representation& x) const {
  auto bp = hom_basis(sigma.source(), x);
  auto bq = hom_basis(sigma.target(), x);
  FpMatrix im(bq.size(), bp.size());
  for (std::size_t k = 0; k < bq.size(); ++k) {
    auto y = solve_coordinates(bp, flatten(compose(sigma, bq[k])));
    if (!y) throw VerificationFailure("restriction along sigma left Hom(P, X)");
    for (std::size_t i = 0; i < bp.size(); ++i) im(k, i) = (*y)(i, 0);
  }
  auto s = la::smith(F_, im);
  return {bp, s.Vinv.sub(s.rank, 0, bp.size() - s.rank, bp.size())};
}

ExtReps<RepMorphism> QuiverCategory::ext_reps(const RepMorphism& sigma, const Representation& x,
                                              int, std::size_t cap) const {
  auto eb = ext_basis(sigma, x);
  const std::size_t k = eb.complement.rows(), b = eb.hom_basis.size();
  ExtReps<RepMorphism> out;
  out.invariants.assign(k, std::to_string(F_.characteristic()));
  std::vector<std::uint32_t> idx(k, 0);
  for (;;) {
    if (out.reps.size() >= cap) {
      out.complete = false;
      break;
    }
    FpMatrix coords(b, 1);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t i = 0; i < b; ++i)
        coords(i, 0) = F_.add(coords(i, 0), F_.mul(idx[r], eb.complement(r, i)));
    out.reps.push_back(combine(eb.hom_basis, coords, sigma.source(), x));
    std::size_t j = k;
    while (j > 0) {
      if (++idx[j - 1] < F_.characteristic()) break;
      idx[j - 1] = 0;
      --j;
    }
    if (j == 0) break;
  }
  return out;
}

ExtGroup<Representation, RepMorphism> QuiverCategory::ext1(const Representation& m,
                                                           const Representation& n) const {
  auto pres = presentation(m);
  auto eb = ext_basis(pres.sigma, n);
  ExtGroup<Representation, RepMorphism> out;
  for (std::size_t r = 0; r < eb.complement.rows(); ++r) {
    FpMatrix coords = eb.complement.sub(r, 0, 1, eb.complement.cols()).transpose();
    auto j = combine(eb.hom_basis, coords, pres.sigma.source(), n);
    out.invariants.push_back(std::to_string(F_.characteristic()));
    out.middles.push_back(pushout(*this, pres.sigma, j).object);
    out.generators.push_back(std::move(j));
  }
  return out;
}

std::size_t QuiverCategory::ext1_dimension(const Representation& m, const Representation& n) const {
  std::size_t vertex_part = 0, arrow_part = 0;
  for (std::size_t v = 0; v < shape_.vertex_count(); ++v) vertex_part += m.dim(v) * n.dim(v);
  for (const auto& a : shape_.arrows()) arrow_part += m.dim(a.source) * n.dim(a.target);
  // dim Hom - dim Ext = vertex_part - arrow_part
  return hom_basis(m, n).size() + arrow_part - vertex_part;
}

// ---------------------------------------------------------------- projectives

QuiverCategory::Cover QuiverCategory::projective_cover(const Representation& m) const {
  const std::size_t n = shape_.vertex_count();
  const auto& as = shape_.arrows();
  std::vector<Representation> parts;
  std::vector<std::pair<std::size_t, FpMatrix>> tops;
  std::vector<std::size_t> mult(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t incoming = 0;
    for (const auto& a : as)
      if (a.target == v) incoming += m.dim(a.source);
    FpMatrix stack(incoming, m.dim(v));
    std::size_t r = 0;
    for (std::size_t ai = 0; ai < as.size(); ++ai)
      if (as[ai].target == v) {
        stack.set_block(r, 0, m.arrow(ai));
        r += m.dim(as[ai].source);
      }
    auto s = la::smith(F_, stack);
    FpMatrix comp = s.Vinv.sub(s.rank, 0, m.dim(v) - s.rank, m.dim(v));
    mult[v] = comp.rows();
    for (std::size_t k = 0; k < comp.rows(); ++k) {
      parts.push_back(projective(v));
      tops.emplace_back(v, comp.sub(k, 0, 1, comp.cols()));
    }
  }
  auto sum = direct_sum(parts);
  std::vector<RepMorphism> maps;
  for (const auto& [v, x] : tops) maps.push_back(yoneda(v, m, x));
  auto c = column(*this, sum, maps, m);
  if (!is_surjective(c)) throw VerificationFailure("projective cover is not surjective");
  return {sum.object, c, mult};
}

bool QuiverCategory::is_projective(const Representation& m) const {
  return projective_cover(m).object.total_dim() == m.total_dim();
}

Presentation<Representation, RepMorphism> QuiverCategory::presentation(
    const Representation& m) const {
  auto cover = projective_cover(m);
  auto ker = kernel(cover.map);
  auto kcover = projective_cover(ker.object);
  auto sigma = compose(kcover.map, ker.map);
  if (!is_injective(sigma))
    throw VerificationFailure("relation module is not projective");
  return {sigma, cover.map};
}

std::vector<Representation> QuiverCategory::sample_modules(int bound) const {
  const std::size_t n = shape_.vertex_count();
  const auto& as = shape_.arrows();
  const std::uint32_t p = F_.characteristic();
  std::vector<Representation> out;
  for (int total = 1; total <= bound; ++total) {
    // dimension vectors with the given total, lexicographic
    std::vector<std::vector<std::size_t>> vecs;
    std::vector<std::size_t> cur(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t v, int left) {
      if (v + 1 == n) {
        cur[v] = static_cast<std::size_t>(left);
        vecs.push_back(cur);
        return;
      }
      for (int k = left; k >= 0; --k) {
        cur[v] = static_cast<std::size_t>(k);
        rec(v + 1, left - k);
      }
    };
    rec(0, total);
    for (const auto& d : vecs) {
      std::size_t entries = 0;
      for (const auto& a : as) entries += d[a.source] * d[a.target];
      double count = 1;
      for (std::size_t i = 0; i < entries; ++i) count *= p;
      if (count > 65536) continue;
      std::vector<Representation> found;
      std::vector<std::uint32_t> idx(entries, 0);
      for (;;) {
        std::vector<FpMatrix> arrows;
        std::size_t e = 0;
        for (const auto& a : as) {
          FpMatrix m(d[a.source], d[a.target]);
          for (auto& x : m.data()) x = idx[e++];
          arrows.push_back(std::move(m));
        }
        Representation r(d, std::move(arrows));
        bool fresh = true;
        for (const auto& f : found)
          if (iso_test(f, r).verdict == Verdict::Yes) {
            fresh = false;
            break;
          }
        if (fresh) found.push_back(r);
        std::size_t k = entries;
        while (k > 0) {
          if (++idx[k - 1] < p) break;
          idx[k - 1] = 0;
          --k;
        }
        if (k == 0) break;
      }
      out.insert(out.end(), found.begin(), found.end());
    }
  }
  return out;
}

std::vector<RepMorphism> QuiverCategory::element_maps(const Representation& m) const {
  const std::size_t n = shape_.vertex_count();
  std::vector<Representation> parts;
  for (std::size_t v = 0; v < n; ++v) parts.push_back(projective(v));
  auto sum = direct_sum(parts);
  std::vector<RepMorphism> out;
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t k = 0; k < m.dim(v); ++k) {
      FpMatrix e(1, m.dim(v));
      e(0, k) = 1;
      std::vector<RepMorphism> maps;
      for (std::size_t w = 0; w < n; ++w)
        maps.push_back(w == v ? yoneda(v, m, e) : zero_map(parts[w], m));
      out.push_back(column(*this, sum, maps, m));
    }
  return out;
}

// ---------------------------------------------------------------- oracle

QuiverOracle::QuiverOracle(const QuiverCategory& cat, const std::vector<RepMorphism>& generators,
                           int sample_bound)
    : cat_(&cat) {
  for (const auto& x : cat.sample_modules(sample_bound)) {
    bool local = true;
    for (const auto& s : generators) {
      auto bp = cat.hom_basis(s.source(), x);
      auto bq = cat.hom_basis(s.target(), x);
      if (bp.size() != bq.size()) {
        local = false;
        break;
      }
      // restriction along s must be injective, hence bijective
      std::vector<RepMorphism> restricted;
      for (const auto& h : bq) restricted.push_back(cat.compose(s, h));
      std::size_t rows = 0;
      for (std::size_t v = 0; v < cat.shape().vertex_count(); ++v)
        rows += s.source().dim(v) * x.dim(v);
      FpMatrix A(rows, restricted.size());
      for (std::size_t k = 0; k < restricted.size(); ++k) {
        std::size_t r = 0;
        for (const auto& m : restricted[k].maps())
          for (auto e : m.data()) A(r++, k) = e;
      }
      if (la::rank(cat.field(), A) != restricted.size()) local = false;
      if (!local) break;
    }
    if (local) tests_.push_back(x);
  }
}

Survival QuiverOracle::survives(const RepMorphism& f) const {
  for (const auto& x : tests_)
    for (const auto& g : cat_->hom_basis(f.target(), x))
      if (!cat_->is_zero(cat_->compose(f, g))) return Survival::Survives;
  return Survival::Unknown;
}

std::string QuiverOracle::describe_ring() const {
  return "local test modules (" + std::to_string(tests_.size()) + ")";
}

Survival QuiverOracle::survives(const Representation& m) const {
  return survives(cat_->identity(m));
}

// ---------------------------------------------------------------- text and JSON

std::string QuiverCategory::describe(const Representation& m) const {
  if (m.is_zero()) return "0";
  std::ostringstream os;
  os << "rep" << dims_string(m.dims());
  bool any = false;
  for (std::size_t a = 0; a < shape_.arrows().size(); ++a) {
    const auto& mat = m.arrow(a);
    if (mat.rows() == 0 || mat.cols() == 0) continue;
    os << (any ? " " : " [") << "a" << a + 1 << "=";
    for (std::size_t i = 0; i < mat.rows(); ++i) {
      os << (i ? ";" : "");
      for (std::size_t j = 0; j < mat.cols(); ++j) os << (j ? "," : "") << mat(i, j);
    }
    any = true;
  }
  if (any) os << "]";
  return os.str();
}

std::string QuiverCategory::describe(const RepMorphism& f) const {
  std::ostringstream os;
  os << describe(f.source()) << " -> " << describe(f.target());
  if (is_zero(f)) os << " (zero)";
  return os.str();
}

nlohmann::json QuiverCategory::matrix_to_json(const FpMatrix& m) const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

FpMatrix QuiverCategory::matrix_from_json(const nlohmann::json& j, std::size_t rows,
                                          std::size_t cols) const {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  FpMatrix m(rows, cols);
  if (rows == 0 || cols == 0) {
    // [] and [[], ...] both denote an empty matrix
    for (const auto& r : j)
      if (!r.is_array() || !r.empty()) throw ParseError("expected an empty matrix");
    if (j.size() != rows && !j.empty()) throw ParseError("wrong number of rows in empty matrix");
    return m;
  }
  if (j.size() != rows)
    throw ShapeMismatch("matrix has " + std::to_string(j.size()) + " rows, expected " +
                        std::to_string(rows));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw ShapeMismatch("matrix row " + std::to_string(i + 1) + " must have " +
                          std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = F_.from_json(j[i][k]);
  }
  return m;
}

nlohmann::json QuiverCategory::to_json(const Representation& m) const {
  nlohmann::json arrows = nlohmann::json::array();
  for (const auto& a : m.arrows()) arrows.push_back(matrix_to_json(a));
  return {{"dims", m.dims()}, {"arrows", arrows}};
}

nlohmann::json QuiverCategory::to_json(const RepMorphism& f) const {
  nlohmann::json maps = nlohmann::json::array();
  for (const auto& m : f.maps()) maps.push_back(matrix_to_json(m));
  return {{"source", to_json(f.source())}, {"target", to_json(f.target())}, {"maps", maps}};
}

Representation QuiverCategory::module_from_json(const nlohmann::json& j) const {
  if (!j.is_object() || !j.contains("dims"))
    throw ParseError("representation needs a \"dims\" array");
  std::vector<std::size_t> dims;
  for (const auto& d : j.at("dims")) {
    if (!d.is_number_integer() || d.get<long>() < 0)
      throw ParseError("dimensions must be non-negative integers");
    dims.push_back(d.get<std::size_t>());
  }
  if (dims.size() != shape_.vertex_count())
    throw ShapeMismatch("\"dims\" has " + std::to_string(dims.size()) + " entries for " +
                        std::to_string(shape_.vertex_count()) + " vertices");
  const auto& as = shape_.arrows();
  nlohmann::json arr = j.value("arrows", nlohmann::json::array());
  if (arr.size() != as.size())
    throw ShapeMismatch("\"arrows\" has " + std::to_string(arr.size()) + " matrices for " +
                        std::to_string(as.size()) + " arrows");
  std::vector<FpMatrix> arrows;
  for (std::size_t a = 0; a < as.size(); ++a)
    arrows.push_back(matrix_from_json(arr[a], dims[as[a].source], dims[as[a].target]));
  return representation(std::move(dims), std::move(arrows));
}

RepMorphism QuiverCategory::morphism_from_json(const nlohmann::json& j) const {
  if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("maps"))
    throw ParseError("morphism needs \"source\", \"target\" and \"maps\"");
  auto s = module_from_json(j.at("source"));
  auto t = module_from_json(j.at("target"));
  const auto& arr = j.at("maps");
  if (!arr.is_array() || arr.size() != shape_.vertex_count())
    throw ShapeMismatch("\"maps\" needs one matrix per vertex");
  std::vector<FpMatrix> maps;
  for (std::size_t v = 0; v < shape_.vertex_count(); ++v)
    maps.push_back(matrix_from_json(arr[v], s.dim(v), t.dim(v)));
  return morphism(s, t, std::move(maps));
}

}  // namespace uloc
