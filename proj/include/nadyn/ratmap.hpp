#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

#include "nadyn/base_field.hpp"
#include "nadyn/errors.hpp"
#include "nadyn/poly.hpp"
#include "nadyn/puiseux.hpp"

namespace nadyn {

// Level-generic helpers. Residue-level arithmetic ignores the context.
inline BaseElem level_div(const BaseElem& a, const BaseElem& b, const PrecisionContext&) { return a / b; }
inline Series level_div(const Series& a, const Series& b, const PrecisionContext& ctx) { return divide(a, b, ctx); }
inline bool level_zero(const BaseElem& a) { return a.is_zero(); }
inline bool level_zero(const Series& a) { return a.is_zero(); }
inline bool level_exact_zero(const BaseElem& a) { return a.is_zero(); }
inline bool level_exact_zero(const Series& a) { return a.is_exact_zero(); }
inline BaseElem level_coerce(const BaseElem& a, GroundField f) { return a.in_field(f); }
inline Series level_coerce(const Series& a, GroundField f) { return a.in_field(f); }

/// Point [x : y] of the projective line over a field level.
///
/// Values built by canonical_point have y == 1 or x == 1 (at series level
/// x == 1 only when y has positive valuation).
template <class C>
class ProjectivePoint {
 public:
  ProjectivePoint() : x_(C(1)), y_(C()) {}
  ProjectivePoint(C x, C y) : x_(std::move(x)), y_(std::move(y)) {}
  static ProjectivePoint affine(C x) { return {std::move(x), C(1)}; }
  static ProjectivePoint infinity() { return {C(1), C()}; }

  [[nodiscard]] const C& x() const { return x_; }
  [[nodiscard]] const C& y() const { return y_; }
  [[nodiscard]] bool is_infinity() const { return level_zero(y_); }

  /// "inf", the affine value, or "[x : y]".
  [[nodiscard]] std::string str() const {
    if (is_infinity() && level_exact_zero(y_)) return "inf";
    if (y_ == C(1)) return x_.str();
    return "[" + x_.str() + " : " + y_.str() + "]";
  }

 private:
  C x_;
  C y_;
};

using ResiduePoint = ProjectivePoint<BaseElem>;
using SeriesPoint = ProjectivePoint<Series>;

template <class C>
ProjectivePoint<C> canonical_point(const C& x, const C& y, const PrecisionContext& ctx) {
  if (level_zero(x) && level_zero(y)) {
    if (level_exact_zero(x) && level_exact_zero(y)) throw std::invalid_argument("[0 : 0] is not a point");
    throw PrecisionExhausted("both homogeneous coordinates vanish to precision");
  }
  if constexpr (std::is_same_v<C, BaseElem>) {
    if (y.is_zero()) return ProjectivePoint<C>::infinity();
    return ProjectivePoint<C>::affine(x / y);
  } else {
    if (y.valuation() <= x.valuation()) return ProjectivePoint<C>::affine(level_div(x, y, ctx));
    if (y.is_exact_zero()) return ProjectivePoint<C>::infinity();
    return ProjectivePoint<C>(C(1), level_div(y, x, ctx));
  }
}

inline bool same_point(const ResiduePoint& a, const ResiduePoint& b) {
  return (a.x() * b.y() - a.y() * b.x()).is_zero();
}
/// Equality at working precision.
inline bool same_point(const SeriesPoint& a, const SeriesPoint& b) {
  return (a.x() * b.y() - a.y() * b.x()).is_zero();
}

/// Rational map P/Q over a field level, of degree max(deg P, deg Q).
///
/// Instances come from make_residue_map / make_series_map (which certify
/// lowest terms) or from operations that preserve lowest terms.
template <class C>
class RationalMap {
 public:
  RationalMap() = default;

  /// Caller guarantees that num and den are coprime and not both zero.
  static RationalMap trusted(GroundField f, Poly<C> num, Poly<C> den) {
    RationalMap r;
    r.field_ = f;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
  }

  [[nodiscard]] GroundField field() const { return field_; }
  [[nodiscard]] const Poly<C>& num() const { return num_; }
  [[nodiscard]] const Poly<C>& den() const { return den_; }
  [[nodiscard]] int degree() const { return std::max({num_.degree(), den_.degree(), 0}); }
  [[nodiscard]] bool is_constant() const { return degree() == 0; }

  /// "(num)/(den)", or the bare numerator when den == 1.
  /// Monomial maps c*z^k print with a signed exponent, e.g. "z^(-8)".
  [[nodiscard]] std::string str() const {
    if (den_.degree() == 0 && den_[0] == C(1)) return poly_str(num_);
    if (den_.is_zero()) return "inf";
    const int k = den_.degree();
    if (k > 0 && den_.low_order() == k && den_[k] == C(1) && !num_.is_zero() && num_.low_order() == num_.degree()) {
      const int e = num_.degree() - k;
      const std::string cs = num_.leading().str();
      const std::string zp = e == 0 ? "" : (e == 1 ? "z" : (e > 0 ? "z^" + std::to_string(e) : "z^(" + std::to_string(e) + ")"));
      if (zp.empty()) return cs;
      if (cs == "1") return zp;
      if (cs == "-1") return "-" + zp;
      const bool single = cs.find(" + ") == std::string::npos && cs.find(" - ") == std::string::npos;
      return (single ? cs : "(" + cs + ")") + "*" + zp;
    }
    return "(" + poly_str(num_) + ")/(" + poly_str(den_) + ")";
  }

  /// Equality of maps: the pairs agree up to a common scalar.
  friend bool operator==(const RationalMap& a, const RationalMap& b) {
    if (a.field_ != b.field_) return false;
    if (a.num_ == b.num_ && a.den_ == b.den_) return true;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

 private:
  GroundField field_;
  Poly<C> num_;
  Poly<C> den_;
};

using ResidueMap = RationalMap<BaseElem>;
using SeriesMap = RationalMap<Series>;

/// Cancels gcd(num, den) and makes the denominator monic (a constant map
/// with value infinity is stored as 1/0).
ResidueMap make_residue_map(GroundField f, const BasePoly& num, const BasePoly& den);

/// Certifies lowest terms through the resultant. Throws CommonFactor or
/// PrecisionExhausted; std::invalid_argument when both are zero.
SeriesMap make_series_map(GroundField f, const SeriesPoly& num, const SeriesPoly& den,
                          const PrecisionContext& ctx = {});

/// Resultant test only; used by make_series_map.
void certify_coprime(const SeriesPoly& num, const SeriesPoly& den, const PrecisionContext& ctx);

/// Divides the pair by t^l, l the minimum coefficient valuation.
std::pair<SeriesPoly, SeriesPoly> normalize_pair(const SeriesPoly& num, const SeriesPoly& den);
SeriesMap normalize_map(const SeriesMap& f);

/// Residue-level canonical form of a coefficient pair of formal degree d.
ResidueMap reduce_pair(GroundField f, const SeriesPoly& num, const SeriesPoly& den);

template <class C>
RationalMap<C> identity_map(GroundField f) {
  return RationalMap<C>::trusted(f, Poly<C>(std::vector<C>{C(), C(1)}), Poly<C>::constant(C(1)));
}

/// Sum of p_i * A^i * B^(d-i): the homogeneous substitution of (A, B) into
/// P regarded as a form of degree d.
template <class C>
Poly<C> hom_substitute(const Poly<C>& p, int d, const Poly<C>& a, const Poly<C>& b) {
  if (b.degree() == 0 && b[0] == C(1)) return p.compose(a);
  std::vector<Poly<C>> apow{Poly<C>::constant(C(1))}, bpow{Poly<C>::constant(C(1))};
  for (int i = 1; i <= d; ++i) {
    apow.push_back(apow.back() * a);
    bpow.push_back(bpow.back() * b);
  }
  Poly<C> acc;
  for (int i = 0; i <= p.degree(); ++i) {
    if (is_trim_zero(p[i])) continue;
    acc += (apow[static_cast<std::size_t>(i)] * bpow[static_cast<std::size_t>(d - i)]).scaled(p[i]);
  }
  return acc;
}

template <class C>
C hom_eval(const Poly<C>& p, int d, const C& x, const C& y) {
  if (y == C(1)) return p.eval(x);
  std::vector<C> ypows{C(1)};
  for (int i = 1; i <= d; ++i) ypows.push_back(ypows.back() * y);
  C total{};
  C xp(1);
  for (int i = 0; i <= std::min(d, p.degree()); ++i) {
    if (!is_trim_zero(p[i])) total += p[i] * xp * ypows[static_cast<std::size_t>(d - i)];
    xp *= x;
  }
  return total;
}

template <class C>
ProjectivePoint<C> evaluate(const RationalMap<C>& f, const ProjectivePoint<C>& z, const PrecisionContext& ctx = {}) {
  const int d = f.degree();
  return canonical_point(hom_eval(f.num(), d, z.x(), z.y()), hom_eval(f.den(), d, z.x(), z.y()), ctx);
}

ResidueMap finish_composite(GroundField f, BasePoly num, BasePoly den, const PrecisionContext& ctx);
SeriesMap finish_composite(GroundField f, SeriesPoly num, SeriesPoly den, const PrecisionContext& ctx);

template <class C>
RationalMap<C> compose(const RationalMap<C>& outer, const RationalMap<C>& inner, const PrecisionContext& ctx = {}) {
  const int d = outer.degree();
  return finish_composite(outer.field(), hom_substitute(outer.num(), d, inner.num(), inner.den()),
                          hom_substitute(outer.den(), d, inner.num(), inner.den()), ctx);
}

template <class C>
RationalMap<C> iterate(const RationalMap<C>& f, int n, const PrecisionContext& ctx = {}) {
  if (n < 0) throw std::invalid_argument("iterate: negative count");
  RationalMap<C> r = identity_map<C>(f.field());
  for (int i = 0; i < n; ++i) r = compose(f, r, ctx);
  return r;
}

/// P'Q - PQ'.
template <class C>
Poly<C> wronskian(const RationalMap<C>& f) {
  return f.num().derivative() * f.den() - f.num() * f.den().derivative();
}

/// m_f(z0) and w_f(z0); weight nullopt means +infinity. `at_precision` marks
/// a weight that could only be bounded below at working precision.
struct LocalData {
  int multiplicity = 1;
  std::optional<int> weight;
  bool at_precision = false;
};

namespace detail {

template <class C>
int vanishing_order(const Poly<C>& p) {
  const int k = p.low_order();
  if (k < 0) return -1;
  for (int i = 0; i < k; ++i)
    if (!level_exact_zero(p[i])) throw PrecisionExhausted("vanishing order hidden by truncation");
  if (level_zero(p[k])) throw PrecisionExhausted("vanishing order hidden by truncation");
  return k;
}

}  // namespace detail

template <class C>
LocalData multiplicity_and_weight(const RationalMap<C>& f, const ProjectivePoint<C>& z0,
                                  const PrecisionContext& ctx = {}) {
  const int d = f.degree();
  if (d == 0) throw std::invalid_argument("multiplicity of a constant map");
  Poly<C> n, m;
  const ProjectivePoint<C> z = canonical_point(z0.x(), z0.y(), ctx);
  if (z.is_infinity() && level_exact_zero(z.y())) {
    std::vector<C> a(static_cast<std::size_t>(d) + 1), b(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) {
      a[static_cast<std::size_t>(d - i)] = f.num()[i];
      b[static_cast<std::size_t>(d - i)] = f.den()[i];
    }
    n = Poly<C>(std::move(a));
    m = Poly<C>(std::move(b));
  } else {
    const C a = z.y() == C(1) ? z.x() : level_div(z.x(), z.y(), ctx);
    const Poly<C> shift(std::vector<C>{a, C(1)});
    n = f.num().compose(shift);
    m = f.den().compose(shift);
  }
  // Phi = psi2 o f o psi1 with Phi(0) = 0.
  Poly<C> pn, pd;
  if (!level_zero(m[0])) {
    const C v = level_div(n[0], m[0], ctx);
    pn = n - m.scaled(v);
    pd = m;
  } else {
    pn = m;
    pd = n;
  }
  LocalData out;
  out.multiplicity = detail::vanishing_order(pn);
  const Poly<C> w = pn.derivative() * pd - pn * pd.derivative();
  if (w.is_zero()) {
    out.weight = std::nullopt;
  } else {
    bool all_zero = true;
    for (const C& c : w.coeffs()) all_zero = all_zero && level_zero(c);
    if (all_zero) {
      out.weight = std::nullopt;
      out.at_precision = true;
    } else {
      out.weight = detail::vanishing_order(w);
    }
  }
  return out;
}

/// Valuation of the spherical distance |xv - yu| / (max(|x|,|y|) max(|u|,|v|)).
Valuation spherical_distance(const SeriesPoint& z, const SeriesPoint& w);

}  // namespace nadyn
