#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "nadyn/poly.hpp"
#include "nadyn/rational.hpp"
#include "nadyn/scalar.hpp"

namespace nadyn {

/// Element of B = Frac(k0[s^(±1/m)]), the computable stand-in for the residue
/// field. Stored as u^shift * num(u) / den(u) with u = s^(1/m), where
///   - num(0) != 0 and den(0) == 1 (no common monomial, normalized denominator),
///   - gcd(num, den) == 1,
///   - m is minimal for the exponents in use.
/// Canonical form makes equality a syntactic comparison.
class BaseElem {
 public:
  BaseElem() = default;
  BaseElem(const Scalar& c);  // NOLINT(google-explicit-constructor)
  BaseElem(long n) : BaseElem(Scalar(n)) {}  // NOLINT(google-explicit-constructor)

  /// c * s^e.
  static BaseElem monomial(const Scalar& c, const Q& e);
  static BaseElem s() { return monomial(Scalar(1), Q(1)); }

  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  [[nodiscard]] bool is_one() const;
  /// True for c * s^e (including constants).
  [[nodiscard]] bool is_monomial() const { return num_.degree() <= 0 && den_.degree() <= 0; }
  [[nodiscard]] bool is_constant() const { return is_monomial() && (is_zero() || shift_ == 0); }
  /// Coefficient of a monomial element.
  [[nodiscard]] Scalar monomial_coefficient() const { return num_[0]; }
  /// Coefficients coerced into the ground field f (may cancel further in F_p).
  [[nodiscard]] BaseElem in_field(GroundField f) const;
  /// Exponent of s of a monomial element.
  [[nodiscard]] Q monomial_exponent() const { return Q(shift_, m_); }

  /// Ground field of the coefficients (rationals for universal constants).
  [[nodiscard]] GroundField field() const;
  /// Degree-style height in s: span of exponents in numerator and denominator.
  [[nodiscard]] Q height() const;

  [[nodiscard]] int exponent_denominator() const { return m_; }
  [[nodiscard]] std::int64_t shift() const { return shift_; }
  [[nodiscard]] const Poly<Scalar>& numerator() const { return num_; }
  [[nodiscard]] const Poly<Scalar>& denominator() const { return den_; }

  friend BaseElem operator+(const BaseElem& a, const BaseElem& b);
  friend BaseElem operator-(const BaseElem& a, const BaseElem& b) { return a + (-b); }
  friend BaseElem operator*(const BaseElem& a, const BaseElem& b);
  friend BaseElem operator/(const BaseElem& a, const BaseElem& b) { return a * b.inverse(); }
  BaseElem operator-() const;
  BaseElem& operator+=(const BaseElem& o) { return *this = *this + o; }
  BaseElem& operator-=(const BaseElem& o) { return *this = *this - o; }
  BaseElem& operator*=(const BaseElem& o) { return *this = *this * o; }

  /// Throws DivisionByZero.
  [[nodiscard]] BaseElem inverse() const;
  [[nodiscard]] BaseElem times_int(long k) const;
  [[nodiscard]] BaseElem pow(long e) const;
  /// The unique q-th root in characteristic p, q a power of p, with
  /// coefficients in F_p. Throws Unresolved otherwise.
  [[nodiscard]] BaseElem frobenius_root(unsigned q) const;

  friend bool operator==(const BaseElem& a, const BaseElem& b);

  [[nodiscard]] std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const BaseElem& b) { return os << b.str(); }

 private:
  static BaseElem canonical(Poly<Scalar> num, Poly<Scalar> den, std::int64_t shift, int m);
  [[nodiscard]] BaseElem lifted(int m) const;

  int m_ = 1;
  std::int64_t shift_ = 0;
  Poly<Scalar> num_;
  Poly<Scalar> den_ = Poly<Scalar>::constant(Scalar(1));
};

using BasePoly = Poly<BaseElem>;

/// r with r^n == c for monomial c whose coefficient has an n-th root in the
/// ground field, or for any c when n is a power of the characteristic; the
/// exponent denominator grows as needed. Throws Unresolved.
BaseElem root_extract(const BaseElem& c, unsigned n);

/// Monic gcd over B by the Euclidean algorithm.
BasePoly poly_gcd_over_base(const BasePoly& p, const BasePoly& q);

/// Roots of a polynomial over B that are representable in B.
struct RootSet {
  std::vector<std::pair<BaseElem, int>> roots;  // root, multiplicity
  std::vector<int> unresolved_degrees;          // factors that could not be split

  [[nodiscard]] int resolved_count() const;
  [[nodiscard]] int unresolved_count() const;
};

/// Splits off linear factors: powers of z, squarefree pieces of degree one,
/// p-th power structure in characteristic p, binomials z^k - c with monomial
/// c, and (over F_p with ground-constant coefficients) exhaustive search.
RootSet find_roots(const BasePoly& f);

std::string format_power(const std::string& var, const Q& e);

/// Joins (coefficient, monomial) pairs into "a*x + b - c*y"; an empty monomial
/// is a bare constant.
std::string format_sum(const std::vector<std::pair<Scalar, std::string>>& terms);

}  // namespace nadyn
