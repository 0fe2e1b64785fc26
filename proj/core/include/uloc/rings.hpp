#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

namespace uloc {

using BigInt = mpz_class;

bool is_prime(std::uint64_t n);

template <class T>
struct Bezout {
  T g, s, t;  // s*a + t*b = g
};

// The integers. Associates are normalised to be non-negative.
class IntegerRing {
 public:
  using value_type = BigInt;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long v) const { return v; }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_unit(const value_type& a) const { return a == 1 || a == -1; }
  bool is_field() const { return false; }

  // Euclidean size comparison.
  bool smaller(const value_type& a, const value_type& b) const {
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0;
  }
  std::pair<value_type, value_type> divmod(const value_type& a, const value_type& b) const;
  bool divides(const value_type& a, const value_type& b) const;
  value_type exact_div(const value_type& a, const value_type& b) const;

  value_type normalize(const value_type& a) const { return abs(a); }
  value_type unit_part(const value_type& a) const { return sgn(a) < 0 ? -1 : 1; }
  value_type unit_inverse(const value_type& u) const { return u; }

  Bezout<value_type> gcd_ext(const value_type& a, const value_type& b) const;
  value_type gcd(const value_type& a, const value_type& b) const;

  // Canonical representative of a modulo m (a itself when m = 0).
  value_type reduce(const value_type& a, const value_type& m) const;
  std::vector<value_type> residues(const value_type& m) const;
  std::vector<value_type> window(int k) const;

  // Number of prime factors counted with multiplicity, a != 0.
  int length(const value_type& a) const;

  std::string to_string(const value_type& a) const { return a.get_str(); }
  nlohmann::json to_json(const value_type& a) const;
  value_type from_json(const nlohmann::json& j) const;
  std::string name() const { return "integers"; }

  bool operator==(const IntegerRing&) const { return true; }
};

// Polynomial over F_p, coefficients low degree first, no trailing zeros.
struct Poly {
  std::vector<std::uint32_t> c;
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool operator==(const Poly& o) const { return c == o.c; }
  bool operator!=(const Poly& o) const { return c != o.c; }
  bool operator<(const Poly& o) const {
    if (c.size() != o.c.size()) return c.size() < o.c.size();
    for (std::size_t i = c.size(); i-- > 0;)
      if (c[i] != o.c[i]) return c[i] < o.c[i];
    return false;
  }
};

class PolyRing {
 public:
  using value_type = Poly;

  explicit PolyRing(std::uint32_t p);
  std::uint32_t characteristic() const { return p_; }

  value_type zero() const { return {}; }
  value_type one() const { return constant(1); }
  value_type from_int(long v) const;
  value_type constant(std::uint64_t v) const;
  value_type monomial(int degree, std::uint32_t coeff = 1) const;

  value_type add(const value_type& a, const value_type& b) const;
  value_type sub(const value_type& a, const value_type& b) const;
  value_type mul(const value_type& a, const value_type& b) const;
  value_type neg(const value_type& a) const;

  bool is_zero(const value_type& a) const { return a.c.empty(); }
  bool is_unit(const value_type& a) const { return a.c.size() == 1; }
  bool is_field() const { return false; }

  bool smaller(const value_type& a, const value_type& b) const {
    return a.c.size() < b.c.size();
  }
  std::pair<value_type, value_type> divmod(const value_type& a, const value_type& b) const;
  bool divides(const value_type& a, const value_type& b) const;
  value_type exact_div(const value_type& a, const value_type& b) const;

  value_type normalize(const value_type& a) const;  // monic
  value_type unit_part(const value_type& a) const;  // leading coefficient
  value_type unit_inverse(const value_type& u) const;

  Bezout<value_type> gcd_ext(const value_type& a, const value_type& b) const;
  value_type gcd(const value_type& a, const value_type& b) const;

  value_type reduce(const value_type& a, const value_type& m) const;
  std::vector<value_type> residues(const value_type& m) const;
  // All polynomials of degree < k.
  std::vector<value_type> window(int k) const;

  int length(const value_type& a) const;

  std::string to_string(const value_type& a) const;
  nlohmann::json to_json(const value_type& a) const;
  value_type from_json(const nlohmann::json& j) const;
  std::string name() const { return "poly"; }

  bool operator==(const PolyRing& o) const { return p_ == o.p_; }

 private:
  std::uint32_t inv(std::uint32_t a) const;
  void trim(value_type& a) const;
  std::vector<value_type> polys_below(int k) const;

  std::uint32_t p_;
};

// The prime field F_p, used for representation linear algebra.
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p);
  std::uint32_t characteristic() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long v) const;

  value_type add(value_type a, value_type b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<value_type>(s >= p_ ? s - p_ : s);
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p_ - b); }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(std::uint64_t(a) * b % p_);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }

  bool is_zero(value_type a) const { return a == 0; }
  bool is_unit(value_type a) const { return a != 0; }
  bool is_field() const { return true; }

  bool smaller(value_type a, value_type b) const { return a == 0 && b != 0; }
  std::pair<value_type, value_type> divmod(value_type a, value_type b) const {
    return {mul(a, inv(b)), 0};
  }
  bool divides(value_type a, value_type b) const { return a != 0 || b == 0; }
  value_type exact_div(value_type a, value_type b) const { return mul(a, inv(b)); }

  value_type normalize(value_type a) const { return a == 0 ? 0 : 1; }
  value_type unit_part(value_type a) const { return a == 0 ? 1 : a; }
  value_type unit_inverse(value_type u) const { return inv(u); }

  Bezout<value_type> gcd_ext(value_type a, value_type b) const;
  value_type gcd(value_type a, value_type b) const { return (a == 0 && b == 0) ? 0 : 1; }

  value_type reduce(value_type a, value_type m) const { return m == 0 ? a : 0; }
  std::vector<value_type> residues(value_type) const { return {0}; }
  std::vector<value_type> window(int) const;
  int length(value_type) const { return 0; }

  value_type inv(value_type a) const;

  std::string to_string(value_type a) const { return std::to_string(a); }
  nlohmann::json to_json(value_type a) const { return a; }
  value_type from_json(const nlohmann::json& j) const;
  std::string name() const { return "prime_field"; }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

}  // namespace uloc
