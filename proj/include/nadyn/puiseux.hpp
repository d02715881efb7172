#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nadyn/base_field.hpp"
#include "nadyn/poly.hpp"
#include "nadyn/rational.hpp"

namespace nadyn {

/// Finite model of the completed Puiseux field: series are known modulo
/// t^t_order, and exponent denominators may not exceed max_denominator.
struct PrecisionContext {
  Q t_order = Q(64);
  int max_denominator = 64;
};

/// Truncated Puiseux series in t over B.
///
/// Terms are sorted by strictly increasing exponent, carry no zero
/// coefficients, and lie below the precision. An exact series (a known finite
/// sum, such as a polynomial in t) has no precision bound.
class Series {
 public:
  struct Term {
    Q exp;
    BaseElem coef;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Series() = default;
  Series(const BaseElem& c);  // NOLINT(google-explicit-constructor)
  Series(const Scalar& c) : Series(BaseElem(c)) {}  // NOLINT(google-explicit-constructor)
  Series(long n) : Series(BaseElem(n)) {}  // NOLINT(google-explicit-constructor)

  static Series monomial(const BaseElem& c, const Q& e);
  static Series t_power(const Q& e) { return monomial(BaseElem(1), e); }
  /// O(t^precision).
  static Series zero_to(const Q& precision);
  /// Sorts, merges equal exponents and truncates at the precision.
  static Series from_terms(std::vector<Term> terms, std::optional<Q> precision);

  [[nodiscard]] bool is_exact() const { return !prec_.has_value(); }
  [[nodiscard]] const std::optional<Q>& precision() const { return prec_; }
  [[nodiscard]] bool is_exact_zero() const { return terms_.empty() && !prec_; }
  /// Zero to working precision (exactly zero or O(t^N)).
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_one() const;
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }

  /// Smallest stored exponent; +infinity when no term is stored.
  [[nodiscard]] Valuation valuation() const;
  /// Valuation, or the precision for O(t^N): a lower bound on the true value.
  [[nodiscard]] Valuation valuation_lower_bound() const;
  [[nodiscard]] BaseElem coefficient(const Q& e) const;
  [[nodiscard]] const BaseElem& leading_coefficient() const;
  /// Coefficient of t^0. Throws NegativeValuation or PrecisionExhausted.
  [[nodiscard]] BaseElem residue() const;
  /// Ground field of the coefficients.
  [[nodiscard]] GroundField field() const;
  [[nodiscard]] Series in_field(GroundField f) const;
  /// lcm of the exponent denominators in use.
  [[nodiscard]] std::int64_t exponent_denominator() const;

  /// Terms with exponent >= e dropped; precision lowered to e.
  [[nodiscard]] Series truncated(const Q& e) const;
  /// Terms with exponent >= e dropped; the result is exact.
  [[nodiscard]] Series head(const Q& e) const;
  /// Multiplication by t^e.
  [[nodiscard]] Series shifted(const Q& e) const;
  [[nodiscard]] Series scaled(const BaseElem& c) const;
  [[nodiscard]] Series times_int(long k) const;

  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b) { return a + (-b); }
  friend Series operator*(const Series& a, const Series& b);
  Series operator-() const;
  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator-=(const Series& o) { return *this = *this - o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  /// Inverse known modulo t^abs_precision (further limited by own precision).
  [[nodiscard]] Series inverse_to(const Q& abs_precision) const;
  /// Inverse with x * inverse(x) = 1 + O(t^t_order) for exact x.
  [[nodiscard]] Series inverse(const PrecisionContext& ctx) const;
  /// Quotient of exact series when the division is exact (finite result).
  [[nodiscard]] std::optional<Series> exact_quotient(const Series& b) const;

  friend bool operator==(const Series& a, const Series& b) = default;

  /// Canonical string, e.g. "t^(3/2) + 2*s*t^2 + O(t^64)".
  [[nodiscard]] std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const Series& s) { return os << s.str(); }

 private:
  std::vector<Term> terms_;
  std::optional<Q> prec_;
};

/// a / b: exact long division when both are exact and it terminates,
/// otherwise multiplication by a truncated inverse.
Series divide(const Series& a, const Series& b, const PrecisionContext& ctx);

/// Throws ExponentDenominatorOverflow when the series needs denominators
/// beyond the context bound.
void check_denominators(const Series& x, const PrecisionContext& ctx);

using SeriesPoly = Poly<Series>;

/// Minimum coefficient valuation (the Gauss valuation of the polynomial).
Valuation gauss_valuation(const SeriesPoly& p);
/// P(center + w) as a polynomial in w.
SeriesPoly taylor_shift(const SeriesPoly& p, const Series& center);

/// One edge of the lower convex hull of (i, val c_i): `length` roots of
/// valuation `root_valuation` (the negated slope). Roots at zero appear as a
/// segment of valuation +infinity.
struct NewtonSegment {
  Valuation root_valuation;
  int length = 0;
  friend bool operator==(const NewtonSegment&, const NewtonSegment&) = default;
};

std::vector<NewtonSegment> newton_polygon(const SeriesPoly& p);
/// Multiset of root valuations, sorted increasingly.
std::vector<Valuation> root_valuations(const std::vector<NewtonSegment>& segments);
/// Roots z with val(z - center) >= radius_val, counted with multiplicity.
int count_zeros_in_disk(const SeriesPoly& p, const Series& center, const Q& radius_val);

std::string poly_str(const SeriesPoly& p, const std::string& var = "z");
std::string poly_str(const BasePoly& p, const std::string& var = "z");

}  // namespace nadyn
