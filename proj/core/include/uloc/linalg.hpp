#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uloc/matrix.hpp"

namespace uloc::la {

template <class Ring>
using Mat = Matrix<typename Ring::value_type>;

template <class Ring>
Mat<Ring> identity(const Ring& R, std::size_t n) {
  Mat<Ring> m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = R.one();
  return m;
}

template <class Ring>
Mat<Ring> mul(const Ring& R, const Mat<Ring>& a, const Mat<Ring>& b) {
  if (a.cols() != b.rows())
    throw ShapeMismatch("cannot multiply " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " by " + std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()));
  Mat<Ring> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& x = a(i, k);
      if (R.is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!R.is_zero(b(k, j))) c(i, j) = R.add(c(i, j), R.mul(x, b(k, j)));
    }
  return c;
}

template <class Ring>
Mat<Ring> add(const Ring& R, const Mat<Ring>& a, const Mat<Ring>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("matrix sum shapes differ");
  Mat<Ring> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = R.add(a(i, j), b(i, j));
  return c;
}

template <class Ring>
Mat<Ring> neg(const Ring& R, const Mat<Ring>& a) {
  Mat<Ring> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = R.neg(a(i, j));
  return c;
}

template <class Ring>
Mat<Ring> sub(const Ring& R, const Mat<Ring>& a, const Mat<Ring>& b) {
  return add(R, a, neg(R, b));
}

template <class Ring>
Mat<Ring> scale(const Ring& R, const typename Ring::value_type& s, const Mat<Ring>& a) {
  Mat<Ring> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = R.mul(s, a(i, j));
  return c;
}

template <class Ring>
bool is_zero(const Ring& R, const Mat<Ring>& a) {
  for (const auto& x : a.data())
    if (!R.is_zero(x)) return false;
  return true;
}

template <class Ring>
Mat<Ring> block_diag(const Ring& R, const Mat<Ring>& a, const Mat<Ring>& b) {
  (void)R;
  Mat<Ring> c(a.rows() + b.rows(), a.cols() + b.cols());
  c.set_block(0, 0, a);
  c.set_block(a.rows(), a.cols(), b);
  return c;
}

// U * A * V = D with U, V invertible and D diagonal with a divisibility chain.
// Vinv is V's inverse, tracked alongside because cokernel normal forms need it.
template <class Ring>
struct SmithForm {
  Mat<Ring> U, D, V, Vinv;
  std::size_t rank = 0;
};

namespace detail {

// new_p = x*row_p + y*row_q, new_q = z*row_p + w*row_q.
template <class Ring, class T>
void row_op(const Ring& R, Matrix<T>& m, std::size_t p, std::size_t q, const T& x, const T& y,
            const T& z, const T& w) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    T a = m(p, j), b = m(q, j);
    if (R.is_zero(a) && R.is_zero(b)) continue;
    m(p, j) = R.add(R.mul(x, a), R.mul(y, b));
    m(q, j) = R.add(R.mul(z, a), R.mul(w, b));
  }
}

template <class Ring, class T>
void col_op(const Ring& R, Matrix<T>& m, std::size_t p, std::size_t q, const T& x, const T& y,
            const T& z, const T& w) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    T a = m(i, p), b = m(i, q);
    if (R.is_zero(a) && R.is_zero(b)) continue;
    m(i, p) = R.add(R.mul(x, a), R.mul(y, b));
    m(i, q) = R.add(R.mul(z, a), R.mul(w, b));
  }
}

}  // namespace detail

template <class Ring>
SmithForm<Ring> smith(const Ring& R, const Mat<Ring>& input) {
  using T = typename Ring::value_type;
  const std::size_t m = input.rows(), n = input.cols();
  SmithForm<Ring> f{identity(R, m), input, identity(R, n), identity(R, n), 0};
  Mat<Ring>& A = f.D;
  const T one = R.one(), zero = R.zero();

  // Column operation on A, mirrored on V and (inversely) on Vinv. The 2x2
  // transforms used here all have determinant one.
  auto column = [&](std::size_t p, std::size_t q, const T& x, const T& y, const T& z, const T& w) {
    detail::col_op(R, A, p, q, x, y, z, w);
    detail::col_op(R, f.V, p, q, x, y, z, w);
    detail::row_op(R, f.Vinv, p, q, w, R.neg(z), R.neg(y), x);
  };
  auto row = [&](std::size_t p, std::size_t q, const T& x, const T& y, const T& z, const T& w) {
    detail::row_op(R, A, p, q, x, y, z, w);
    detail::row_op(R, f.U, p, q, x, y, z, w);
  };

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (!R.is_zero(A(i, j)) && (pi == m || R.smaller(A(i, j), A(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == m) break;
    A.swap_rows(t, pi);
    f.U.swap_rows(t, pi);
    A.swap_cols(t, pj);
    f.V.swap_cols(t, pj);
    f.Vinv.swap_rows(t, pj);

    for (;;) {
      for (std::size_t i = t + 1; i < m; ++i) {
        if (R.is_zero(A(i, t))) continue;
        const T a = A(t, t), b = A(i, t);
        if (R.divides(a, b)) {
          row(t, i, one, zero, R.neg(R.exact_div(b, a)), one);
        } else {
          auto bz = R.gcd_ext(a, b);
          row(t, i, bz.s, bz.t, R.neg(R.exact_div(b, bz.g)), R.exact_div(a, bz.g));
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (R.is_zero(A(t, j))) continue;
        const T a = A(t, t), b = A(t, j);
        if (R.divides(a, b)) {
          column(t, j, one, zero, R.neg(R.exact_div(b, a)), one);
        } else {
          auto bz = R.gcd_ext(a, b);
          column(t, j, bz.s, bz.t, R.neg(R.exact_div(b, bz.g)), R.exact_div(a, bz.g));
        }
      }
      bool column_clear = true;
      for (std::size_t i = t + 1; i < m && column_clear; ++i)
        if (!R.is_zero(A(i, t))) column_clear = false;
      if (!column_clear) continue;
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!R.divides(A(t, t), A(i, j))) {
            bad = i;
            break;
          }
      if (bad == m) break;
      row(t, bad, one, one, zero, one);
    }
    const T u = R.unit_part(A(t, t));
    if (u != one) {
      const T ui = R.unit_inverse(u);
      for (std::size_t j = 0; j < n; ++j) A(t, j) = R.mul(ui, A(t, j));
      for (std::size_t j = 0; j < m; ++j) f.U(t, j) = R.mul(ui, f.U(t, j));
    }
  }
  f.rank = t;
  return f;
}

template <class Ring>
std::size_t rank(const Ring& R, const Mat<Ring>& a) {
  return smith(R, a).rank;
}

// Some X with A * X = B, or nothing when no solution exists over the ring.
template <class Ring>
std::optional<Mat<Ring>> solve(const Ring& R, const Mat<Ring>& A, const Mat<Ring>& B) {
  if (A.rows() != B.rows())
    throw ShapeMismatch("solve: A has " + std::to_string(A.rows()) + " rows, b has " +
                        std::to_string(B.rows()));
  auto f = smith(R, A);
  Mat<Ring> ub = mul(R, f.U, B);
  Mat<Ring> y(A.cols(), B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < B.cols(); ++j) {
      if (i < f.rank) {
        if (!R.divides(f.D(i, i), ub(i, j))) return std::nullopt;
        y(i, j) = R.exact_div(ub(i, j), f.D(i, i));
      } else if (!R.is_zero(ub(i, j))) {
        return std::nullopt;
      }
    }
  return mul(R, f.V, y);
}

// Some X with X * A = B.
template <class Ring>
std::optional<Mat<Ring>> solve_left(const Ring& R, const Mat<Ring>& A, const Mat<Ring>& B) {
  auto x = solve(R, A.transpose(), B.transpose());
  if (!x) return std::nullopt;
  return x->transpose();
}

// Rows spanning {y : y * A = 0}; they form a basis of a saturated submodule.
template <class Ring>
Mat<Ring> left_kernel(const Ring& R, const Mat<Ring>& A) {
  auto f = smith(R, A);
  return f.U.sub(f.rank, 0, A.rows() - f.rank, A.rows());
}

// Columns spanning {x : A * x = 0}.
template <class Ring>
Mat<Ring> right_kernel(const Ring& R, const Mat<Ring>& A) {
  auto f = smith(R, A);
  return f.V.sub(0, f.rank, A.cols(), A.cols() - f.rank);
}

template <class Ring>
bool in_row_space(const Ring& R, const Mat<Ring>& A, const Mat<Ring>& rows) {
  if (A.rows() == 0) return is_zero(R, rows);
  return solve_left(R, A, rows).has_value();
}

}  // namespace uloc::la
