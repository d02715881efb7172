#include "nadyn/scalar.hpp"

#include <bit>
#include <stdexcept>

#include "nadyn/errors.hpp"

namespace nadyn {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

// Extended Euclid on representatives in [0, p).
std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r0 = p, r1 = mod(a, p), s0 = 0, s1 = 1;
  if (r1 == 0) throw DivisionByZero("zero in F_" + std::to_string(p));
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  return mod(s0, p);
}

std::int64_t mpz_mod_p(const mpz_class& z, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return static_cast<std::int64_t>(r.get_ui());
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

GroundField GroundField::prime(std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  return {p};
}

Scalar::Scalar(GroundField f, long n) : p_(f.p) {
  if (p_ == 0)
    v_ = mpq_class(n);
  else
    v_ = mod(n, p_);
}

Scalar::Scalar(GroundField f, const mpq_class& q) : p_(f.p) {
  if (p_ == 0) {
    v_ = q;
  } else {
    const std::int64_t d = mpz_mod_p(q.get_den(), p_);
    if (d == 0) throw DivisionByZero("denominator divisible by " + std::to_string(p_));
    v_ = mod(mpz_mod_p(q.get_num(), p_) * inv_mod(d, p_), p_);
  }
}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw DivisionByZero();
  mpq_class q(num, den);
  q.canonicalize();
  Scalar s;
  s.v_ = q;
  return s;
}

bool Scalar::is_zero() const {
  if (p_ == 0) return sgn(std::get<mpq_class>(v_)) == 0;
  return std::get<std::int64_t>(v_) == 0;
}

bool Scalar::is_one() const {
  if (p_ == 0) return std::get<mpq_class>(v_) == 1;
  return std::get<std::int64_t>(v_) == 1;
}

bool Scalar::is_negative() const { return p_ == 0 && sgn(std::get<mpq_class>(v_)) < 0; }

Scalar Scalar::in_field(GroundField f) const {
  if (f.p == p_) return *this;
  if (p_ != 0) throw std::logic_error("cannot move an F_" + std::to_string(p_) + " element into " + f.name());
  return Scalar(f, std::get<mpq_class>(v_));
}

std::uint32_t Scalar::common_char(const Scalar& a, const Scalar& b) {
  if (a.p_ == b.p_) return a.p_;
  if (a.p_ == 0) return b.p_;
  if (b.p_ == 0) return a.p_;
  throw std::logic_error("mixed characteristics " + std::to_string(a.p_) + " and " + std::to_string(b.p_));
}

std::int64_t Scalar::residue_in(std::uint32_t p) const {
  if (p_ == p) return std::get<std::int64_t>(v_);
  return std::get<std::int64_t>(Scalar(GroundField{p}, std::get<mpq_class>(v_)).v_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  const std::uint32_t p = Scalar::common_char(a, b);
  Scalar r;
  r.p_ = p;
  if (p == 0)
    r.v_ = mpq_class(std::get<mpq_class>(a.v_) + std::get<mpq_class>(b.v_));
  else
    r.v_ = mod(a.residue_in(p) + b.residue_in(p), p);
  return r;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  const std::uint32_t p = Scalar::common_char(a, b);
  Scalar r;
  r.p_ = p;
  if (p == 0)
    r.v_ = mpq_class(std::get<mpq_class>(a.v_) * std::get<mpq_class>(b.v_));
  else
    r.v_ = mod(a.residue_in(p) * b.residue_in(p), p);
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (p_ == 0)
    r.v_ = mpq_class(-std::get<mpq_class>(v_));
  else
    r.v_ = mod(-std::get<std::int64_t>(v_), p_);
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of 0");
  Scalar r = *this;
  if (p_ == 0)
    r.v_ = mpq_class(1 / std::get<mpq_class>(v_));
  else
    r.v_ = inv_mod(std::get<std::int64_t>(v_), p_);
  return r;
}

Scalar Scalar::times_int(long k) const { return *this * Scalar(field(), k); }

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar base = *this;
  Scalar acc(field(), 1);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

std::optional<Scalar> Scalar::nth_root(unsigned n) const {
  if (n == 0) throw std::invalid_argument("nth_root: n == 0");
  if (n == 1 || is_zero() || is_one()) return *this;
  if (p_ == 0) {
    const mpq_class& q = std::get<mpq_class>(v_);
    if (n % 2 == 0 && sgn(q) < 0) return std::nullopt;
    mpz_class num = abs(q.get_num()), den = q.get_den(), rn, rd;
    if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n) == 0) return std::nullopt;
    if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n) == 0) return std::nullopt;
    if (sgn(q) < 0) rn = -rn;
    Scalar r;
    r.v_ = mpq_class(rn, rd);
    return r;
  }
  // x -> x^p is the identity on F_p, so n = p (or any power of p) is immediate.
  unsigned m = n;
  while (m % p_ == 0) m /= p_;
  if (m == 1) return *this;
  for (std::int64_t x = 1; x < static_cast<std::int64_t>(p_); ++x) {
    Scalar c(field(), x);
    if (c.pow(m) == *this) return c;
  }
  return std::nullopt;
}

bool operator==(const Scalar& a, const Scalar& b) {
  const std::uint32_t p = Scalar::common_char(a, b);
  if (p == 0) return std::get<mpq_class>(a.v_) == std::get<mpq_class>(b.v_);
  return a.residue_in(p) == b.residue_in(p);
}

std::size_t Scalar::bit_size() const {
  if (p_ != 0) return std::bit_width(p_);
  const mpq_class& q = std::get<mpq_class>(v_);
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

std::string Scalar::str() const {
  if (p_ == 0) return std::get<mpq_class>(v_).get_str();
  return std::to_string(std::get<std::int64_t>(v_));
}

}  // namespace nadyn
