#include "uloc/rings.hpp"

#include <algorithm>

#include "uloc/error.hpp"

namespace uloc {

namespace {

constexpr std::size_t kMaxEnumeration = 1u << 20;

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------- integers

std::pair<BigInt, BigInt> IntegerRing::divmod(const BigInt& a, const BigInt& b) const {
  BigInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return {q, r};
}

bool IntegerRing::divides(const BigInt& a, const BigInt& b) const {
  if (sgn(a) == 0) return sgn(b) == 0;
  return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
}

BigInt IntegerRing::exact_div(const BigInt& a, const BigInt& b) const {
  BigInt q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Bezout<BigInt> IntegerRing::gcd_ext(const BigInt& a, const BigInt& b) const {
  Bezout<BigInt> r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt IntegerRing::gcd(const BigInt& a, const BigInt& b) const {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

BigInt IntegerRing::reduce(const BigInt& a, const BigInt& m) const {
  if (sgn(m) == 0) return a;
  BigInt r;
  BigInt am = abs(m);
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), am.get_mpz_t());
  return r;
}

std::vector<BigInt> IntegerRing::residues(const BigInt& m) const {
  BigInt am = abs(m);
  if (am > BigInt(static_cast<unsigned long>(kMaxEnumeration)))
    throw BoundViolation("residue enumeration modulo " + am.get_str() + " is too large");
  std::vector<BigInt> out;
  for (unsigned long i = 0; i < am.get_ui(); ++i) out.emplace_back(i);
  return out;
}

std::vector<BigInt> IntegerRing::window(int k) const {
  std::vector<BigInt> out{0};
  for (int i = 1; i <= k; ++i) {
    out.emplace_back(i);
    out.emplace_back(-i);
  }
  return out;
}

int IntegerRing::length(const BigInt& a) const {
  BigInt n = abs(a);
  int count = 0;
  for (unsigned long d = 2; d < 1000000 && BigInt(d) * d <= n; ++d) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      n /= d;
      ++count;
    }
  }
  if (n > 1) {
    // Whatever survives trial division is prime unless it is very large.
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
      throw BoundViolation("cannot factor " + a.get_str() + " by trial division");
    ++count;
  }
  return count;
}

nlohmann::json IntegerRing::to_json(const BigInt& a) const {
  if (a.fits_slong_p()) return a.get_si();
  return a.get_str();
}

BigInt IntegerRing::from_json(const nlohmann::json& j) const {
  if (j.is_number_integer()) return BigInt(j.get<long>());
  if (j.is_number_unsigned()) return BigInt(j.get<unsigned long>());
  if (j.is_string()) {
    BigInt v;
    if (v.set_str(j.get<std::string>(), 10) != 0)
      throw ParseError("not an integer literal: " + j.dump());
    return v;
  }
  throw ParseError("expected an integer, got " + j.dump());
}

// ---------------------------------------------------------------- F_p[x]

PolyRing::PolyRing(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw NotPrime("characteristic " + std::to_string(p) + " is not prime");
}

std::uint32_t PolyRing::inv(std::uint32_t a) const {
  return static_cast<std::uint32_t>(pow_mod(a, p_ - 2, p_));
}

void PolyRing::trim(Poly& a) const {
  while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
}

Poly PolyRing::constant(std::uint64_t v) const {
  Poly r;
  if (v % p_) r.c.push_back(static_cast<std::uint32_t>(v % p_));
  return r;
}

Poly PolyRing::from_int(long v) const {
  long m = v % static_cast<long>(p_);
  if (m < 0) m += p_;
  return constant(static_cast<std::uint64_t>(m));
}

Poly PolyRing::monomial(int degree, std::uint32_t coeff) const {
  Poly r;
  if (coeff % p_ == 0) return r;
  r.c.assign(degree + 1, 0);
  r.c[degree] = coeff % p_;
  return r;
}

Poly PolyRing::add(const Poly& a, const Poly& b) const {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    std::uint64_t s = (i < a.c.size() ? a.c[i] : 0) + std::uint64_t(i < b.c.size() ? b.c[i] : 0);
    r.c[i] = static_cast<std::uint32_t>(s % p_);
  }
  trim(r);
  return r;
}

Poly PolyRing::neg(const Poly& a) const {
  Poly r = a;
  for (auto& x : r.c) x = x ? p_ - x : 0;
  return r;
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const { return add(a, neg(b)); }

Poly PolyRing::mul(const Poly& a, const Poly& b) const {
  if (a.c.empty() || b.c.empty()) return {};
  std::vector<std::uint64_t> acc(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j)
      acc[i + j] = (acc[i + j] + std::uint64_t(a.c[i]) * b.c[j]) % p_;
  Poly r;
  r.c.assign(acc.begin(), acc.end());
  trim(r);
  return r;
}

std::pair<Poly, Poly> PolyRing::divmod(const Poly& a, const Poly& b) const {
  if (b.c.empty()) throw std::domain_error("polynomial division by zero");
  Poly r = a;
  Poly q;
  if (r.c.size() < b.c.size()) return {q, r};
  q.c.assign(r.c.size() - b.c.size() + 1, 0);
  const std::uint32_t lead_inv = inv(b.c.back());
  while (r.c.size() >= b.c.size()) {
    std::size_t shift = r.c.size() - b.c.size();
    std::uint32_t f = static_cast<std::uint32_t>(std::uint64_t(r.c.back()) * lead_inv % p_);
    q.c[shift] = f;
    for (std::size_t i = 0; i < b.c.size(); ++i) {
      std::uint64_t sub = std::uint64_t(f) * b.c[i] % p_;
      r.c[i + shift] = static_cast<std::uint32_t>((r.c[i + shift] + p_ - sub) % p_);
    }
    trim(r);
  }
  trim(q);
  return {q, r};
}

bool PolyRing::divides(const Poly& a, const Poly& b) const {
  if (a.c.empty()) return b.c.empty();
  return divmod(b, a).second.c.empty();
}

Poly PolyRing::exact_div(const Poly& a, const Poly& b) const { return divmod(a, b).first; }

Poly PolyRing::normalize(const Poly& a) const {
  if (a.c.empty()) return a;
  return mul(a, constant(inv(a.c.back())));
}

Poly PolyRing::unit_part(const Poly& a) const {
  if (a.c.empty()) return one();
  return constant(a.c.back());
}

Poly PolyRing::unit_inverse(const Poly& u) const { return constant(inv(u.c.at(0))); }

Bezout<Poly> PolyRing::gcd_ext(const Poly& a, const Poly& b) const {
  Poly r0 = a, r1 = b, s0 = one(), s1 = zero(), t0 = zero(), t1 = one();
  while (!r1.c.empty()) {
    auto [q, r] = divmod(r0, r1);
    r0 = r1;
    r1 = r;
    Poly s2 = sub(s0, mul(q, s1));
    s0 = s1;
    s1 = s2;
    Poly t2 = sub(t0, mul(q, t1));
    t0 = t1;
    t1 = t2;
  }
  if (r0.c.empty()) return {r0, one(), zero()};
  Poly scale = constant(inv(r0.c.back()));
  return {mul(r0, scale), mul(s0, scale), mul(t0, scale)};
}

Poly PolyRing::gcd(const Poly& a, const Poly& b) const { return gcd_ext(a, b).g; }

Poly PolyRing::reduce(const Poly& a, const Poly& m) const {
  if (m.c.empty()) return a;
  return divmod(a, m).second;
}

std::vector<Poly> PolyRing::polys_below(int k) const {
  std::size_t count = 1;
  for (int i = 0; i < k; ++i) {
    count *= p_;
    if (count > kMaxEnumeration) throw BoundViolation("polynomial enumeration is too large");
  }
  std::vector<Poly> out;
  out.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    Poly f;
    std::size_t v = idx;
    for (int i = 0; i < k; ++i) {
      f.c.push_back(static_cast<std::uint32_t>(v % p_));
      v /= p_;
    }
    trim(f);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Poly> PolyRing::residues(const Poly& m) const { return polys_below(m.degree()); }

std::vector<Poly> PolyRing::window(int k) const { return polys_below(k); }

int PolyRing::length(const Poly& a) const {
  Poly rest = normalize(a);
  int count = 0;
  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    for (const Poly& low : polys_below(d)) {
      Poly f = add(low, monomial(d));
      while (rest.degree() >= d) {
        auto [q, r] = divmod(rest, f);
        if (!r.c.empty()) break;
        rest = q;
        ++count;
      }
    }
  }
  if (rest.degree() >= 1) ++count;
  return count;
}

std::string PolyRing::to_string(const Poly& a) const {
  if (a.c.empty()) return "0";
  std::string out;
  for (std::size_t i = a.c.size(); i-- > 0;) {
    if (a.c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || a.c[i] != 1) out += std::to_string(a.c[i]);
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

nlohmann::json PolyRing::to_json(const Poly& a) const {
  nlohmann::json j = nlohmann::json::array();
  for (auto x : a.c) j.push_back(x);
  return j;
}

Poly PolyRing::from_json(const nlohmann::json& j) const {
  if (j.is_number_integer()) return from_int(j.get<long>());
  if (!j.is_array()) throw ParseError("expected a coefficient list, got " + j.dump());
  Poly r;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw ParseError("bad polynomial coefficient " + x.dump());
    long v = x.get<long>() % static_cast<long>(p_);
    if (v < 0) v += p_;
    r.c.push_back(static_cast<std::uint32_t>(v));
  }
  trim(r);
  return r;
}

// ---------------------------------------------------------------- F_p

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw NotPrime("characteristic " + std::to_string(p) + " is not prime");
}

std::uint32_t PrimeField::from_int(long v) const {
  long m = v % static_cast<long>(p_);
  if (m < 0) m += p_;
  return static_cast<std::uint32_t>(m);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero in a prime field");
  return static_cast<std::uint32_t>(pow_mod(a, p_ - 2, p_));
}

Bezout<std::uint32_t> PrimeField::gcd_ext(std::uint32_t a, std::uint32_t b) const {
  if (a != 0) return {1, inv(a), 0};
  if (b != 0) return {1, 0, inv(b)};
  return {0, 1, 0};
}

std::vector<std::uint32_t> PrimeField::window(int k) const {
  std::vector<std::uint32_t> out;
  std::uint64_t n = std::min<std::uint64_t>(p_, p_ <= 256 ? p_ : 2ull * k + 1);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

std::uint32_t PrimeField::from_json(const nlohmann::json& j) const {
  if (!j.is_number_integer()) throw ParseError("expected a field element, got " + j.dump());
  return from_int(j.get<long>());
}

}  // namespace uloc
