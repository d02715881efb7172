#include "nadyn/puiseux.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "nadyn/errors.hpp"

namespace nadyn {

Series::Series(const BaseElem& c) {
  if (!c.is_zero()) terms_.push_back({Q(0), c});
}

Series Series::monomial(const BaseElem& c, const Q& e) {
  Series r;
  if (!c.is_zero()) r.terms_.push_back({e, c});
  return r;
}

Series Series::zero_to(const Q& precision) {
  Series r;
  r.prec_ = precision;
  return r;
}

Series Series::from_terms(std::vector<Term> terms, std::optional<Q> precision) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
  Series r;
  r.prec_ = precision;
  for (Term& t : terms) {
    if (precision && t.exp >= *precision) break;
    if (!r.terms_.empty() && r.terms_.back().exp == t.exp) {
      r.terms_.back().coef += t.coef;
      if (r.terms_.back().coef.is_zero()) r.terms_.pop_back();
    } else if (!t.coef.is_zero()) {
      r.terms_.push_back(std::move(t));
    }
  }
  return r;
}

bool Series::is_one() const { return !prec_ && terms_.size() == 1 && terms_[0].exp.is_zero() && terms_[0].coef.is_one(); }

Valuation Series::valuation() const {
  if (terms_.empty()) return Valuation::infinity();
  return terms_.front().exp;
}

Valuation Series::valuation_lower_bound() const {
  if (!terms_.empty()) return terms_.front().exp;
  if (prec_) return *prec_;
  return Valuation::infinity();
}

BaseElem Series::coefficient(const Q& e) const {
  for (const Term& t : terms_)
    if (t.exp == e) return t.coef;
  return {};
}

const BaseElem& Series::leading_coefficient() const {
  if (terms_.empty()) throw PrecisionExhausted("leading coefficient of a series that is zero to precision");
  return terms_.front().coef;
}

BaseElem Series::residue() const {
  if (!terms_.empty() && terms_.front().exp < Q(0)) throw NegativeValuation("residue of " + str());
  if (prec_ && *prec_ <= Q(0)) throw PrecisionExhausted("residue of " + str());
  return coefficient(Q(0));
}

GroundField Series::field() const {
  for (const Term& t : terms_) {
    const GroundField f = t.coef.field();
    if (!f.is_rationals()) return f;
  }
  return GroundField::rationals();
}

Series Series::in_field(GroundField f) const {
  Series r;
  r.prec_ = prec_;
  for (const Term& t : terms_) {
    BaseElem c = t.coef.in_field(f);
    if (!c.is_zero()) r.terms_.push_back({t.exp, std::move(c)});
  }
  return r;
}

std::int64_t Series::exponent_denominator() const {
  std::int64_t m = 1;
  for (const Term& t : terms_) m = std::lcm(m, t.exp.den());
  if (prec_) m = std::lcm(m, prec_->den());
  return m;
}

Series Series::truncated(const Q& e) const {
  Series r;
  r.prec_ = prec_ ? min(*prec_, e) : e;
  for (const Term& t : terms_)
    if (t.exp < *r.prec_) r.terms_.push_back(t);
  return r;
}

Series Series::head(const Q& e) const {
  Series r;
  for (const Term& t : terms_)
    if (t.exp < e) r.terms_.push_back(t);
  return r;
}

Series Series::shifted(const Q& e) const {
  Series r = *this;
  for (Term& t : r.terms_) t.exp += e;
  if (r.prec_) *r.prec_ += e;
  return r;
}

Series Series::scaled(const BaseElem& c) const {
  if (c.is_zero()) return {};
  Series r = *this;
  for (Term& t : r.terms_) t.coef *= c;
  return r;
}

Series Series::times_int(long k) const {
  Series r;
  r.prec_ = prec_;
  for (const Term& t : terms_) {
    BaseElem c = t.coef.times_int(k);
    if (!c.is_zero()) r.terms_.push_back({t.exp, std::move(c)});
  }
  return r;
}

Series Series::operator-() const {
  Series r = *this;
  for (Term& t : r.terms_) t.coef = -t.coef;
  return r;
}

Series operator+(const Series& a, const Series& b) {
  Series r;
  if (a.prec_ && b.prec_)
    r.prec_ = min(*a.prec_, *b.prec_);
  else
    r.prec_ = a.prec_ ? a.prec_ : b.prec_;
  std::size_t i = 0, j = 0;
  const auto& x = a.terms_;
  const auto& y = b.terms_;
  r.terms_.reserve(x.size() + y.size());
  while (i < x.size() || j < y.size()) {
    Series::Term t;
    if (j == y.size() || (i < x.size() && x[i].exp < y[j].exp)) {
      t = x[i++];
    } else if (i == x.size() || y[j].exp < x[i].exp) {
      t = y[j++];
    } else {
      t = {x[i].exp, x[i].coef + y[j].coef};
      ++i;
      ++j;
    }
    if (r.prec_ && t.exp >= *r.prec_) break;
    if (!t.coef.is_zero()) r.terms_.push_back(std::move(t));
  }
  return r;
}

Series operator*(const Series& a, const Series& b) {
  if (a.is_exact_zero() || b.is_exact_zero()) return {};
  std::optional<Q> prec;
  if (a.prec_ || b.prec_) {
    const Valuation va = a.valuation_lower_bound();
    const Valuation vb = b.valuation_lower_bound();
    Valuation pa = a.prec_ ? Valuation(*a.prec_) : Valuation::infinity();
    Valuation pb = b.prec_ ? Valuation(*b.prec_) : Valuation::infinity();
    prec = min(pa + vb, pb + va).value();
  }
  std::map<Q, BaseElem> acc;
  for (const auto& s : a.terms_)
    for (const auto& u : b.terms_) {
      const Q e = s.exp + u.exp;
      if (prec && e >= *prec) break;
      auto [it, fresh] = acc.try_emplace(e, s.coef * u.coef);
      if (!fresh) it->second += s.coef * u.coef;
    }
  Series r;
  r.prec_ = prec;
  for (auto& [e, c] : acc)
    if (!c.is_zero()) r.terms_.push_back({e, std::move(c)});
  return r;
}

Series Series::inverse_to(const Q& abs_precision) const {
  if (is_exact_zero()) throw DivisionByZero("inverse of exact zero series");
  if (terms_.empty()) throw PrecisionExhausted("inverse of " + str());
  const Q v = terms_.front().exp;
  const BaseElem c_inv = terms_.front().coef.inverse();
  // x = c t^v (1 + y) with val(y) > 0.
  Q rel = abs_precision + v;
  if (prec_) rel = min(rel, *prec_ - v);
  Series y;
  for (std::size_t i = 1; i < terms_.size(); ++i) y.terms_.push_back({terms_[i].exp - v, terms_[i].coef * c_inv});
  if (prec_) y.prec_ = *prec_ - v;
  // 1/(1 + y) = sum b_n u^n with u = t^(1/m), b_0 = 1, b_n = -sum_k y_k b_(n-k).
  std::int64_t m = 1;
  for (const Term& x : y.terms_) m = std::lcm(m, x.exp.den());
  const std::int64_t count = std::max<std::int64_t>((rel * Q(m)).ceil(), 0);
  std::vector<std::pair<std::int64_t, BaseElem>> ys;
  for (const Term& x : y.terms_) {
    const std::int64_t k = (x.exp * Q(m)).num();
    if (k >= count) break;
    ys.emplace_back(k, x.coef);
  }
  std::vector<BaseElem> b(static_cast<std::size_t>(count));
  if (count > 0) b[0] = BaseElem(1);
  for (std::int64_t n = 1; n < count; ++n) {
    BaseElem bn;
    for (const auto& [k, yk] : ys) {
      if (k > n) break;
      const BaseElem& prev = b[static_cast<std::size_t>(n - k)];
      if (!prev.is_zero()) bn -= yk * prev;
    }
    b[static_cast<std::size_t>(n)] = std::move(bn);
  }
  std::vector<Term> terms;
  for (std::int64_t n = 0; n < count; ++n)
    if (!b[static_cast<std::size_t>(n)].is_zero()) terms.push_back({Q(n, m), std::move(b[static_cast<std::size_t>(n)])});
  const Series acc = from_terms(std::move(terms), rel);
  Series r = acc.scaled(c_inv).shifted(-v);
  return r;
}

Series Series::inverse(const PrecisionContext& ctx) const {
  if (is_exact_zero()) throw DivisionByZero("inverse of exact zero series");
  if (terms_.empty()) throw PrecisionExhausted("inverse of " + str());
  const Q v = terms_.front().exp;
  if (is_exact() && terms_.size() == 1) return monomial(terms_.front().coef.inverse(), -v);
  return inverse_to(ctx.t_order - v);
}

std::optional<Series> Series::exact_quotient(const Series& b) const {
  if (!is_exact() || !b.is_exact()) return std::nullopt;
  if (b.terms_.empty()) throw DivisionByZero("exact division by zero series");
  if (terms_.empty()) return Series();
  const Q b_lo = b.terms_.front().exp;
  const Q limit = terms_.back().exp - b.terms_.back().exp;
  const BaseElem b_inv = b.terms_.front().coef.inverse();
  Series rem = *this;
  std::vector<Term> q;
  while (!rem.terms_.empty()) {
    const Q e = rem.terms_.front().exp - b_lo;
    if (e > limit) return std::nullopt;
    const BaseElem c = rem.terms_.front().coef * b_inv;
    q.push_back({e, c});
    rem -= b.scaled(c).shifted(e);
  }
  return from_terms(std::move(q), std::nullopt);
}

Series divide(const Series& a, const Series& b, const PrecisionContext& ctx) {
  if (b.is_exact_zero()) throw DivisionByZero("series division by exact zero");
  if (b.is_zero()) throw PrecisionExhausted("division by " + b.str());
  if (a.is_exact() && b.is_exact()) {
    if (auto q = a.exact_quotient(b)) return *q;
  }
  return a * b.inverse(ctx);
}

void check_denominators(const Series& x, const PrecisionContext& ctx) {
  if (x.exponent_denominator() > ctx.max_denominator) throw ExponentDenominatorOverflow(x.str());
}

std::string Series::str() const {
  std::vector<std::pair<Scalar, std::string>> parts;
  for (const Term& t : terms_) {
    const std::string tp = t.exp.is_zero() ? std::string() : format_power("t", t.exp);
    if (t.coef.is_monomial()) {
      const Q se = t.coef.monomial_exponent();
      std::string mono = se.is_zero() ? std::string() : format_power("s", se);
      if (!tp.empty()) mono = mono.empty() ? tp : mono + "*" + tp;
      parts.emplace_back(t.coef.monomial_coefficient(), mono);
    } else {
      std::string mono = "(" + t.coef.str() + ")";
      if (!tp.empty()) mono += "*" + tp;
      parts.emplace_back(Scalar(1), mono);
    }
  }
  if (prec_) {
    const std::string o = "O(" + format_power("t", *prec_) + ")";
    if (parts.empty()) return o;
    return format_sum(parts) + " + " + o;
  }
  return format_sum(parts);
}

Valuation gauss_valuation(const SeriesPoly& p) {
  Valuation v = Valuation::infinity();
  for (const Series& c : p.coeffs()) v = min(v, c.valuation_lower_bound());
  return v;
}

SeriesPoly taylor_shift(const SeriesPoly& p, const Series& center) {
  if (center.is_exact_zero()) return p;
  return p.compose(SeriesPoly(std::vector<Series>{center, Series(1)}));
}

std::vector<NewtonSegment> newton_polygon(const SeriesPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("Newton polygon of the zero polynomial");
  if (p.leading().is_zero()) throw PrecisionExhausted("leading coefficient vanishes to precision");
  const int i0 = p.low_order();
  if (p[i0].is_zero()) throw PrecisionExhausted("lowest coefficient vanishes to precision");
  std::vector<NewtonSegment> out;
  if (i0 > 0) out.push_back({Valuation::infinity(), i0});

  struct Pt {
    int x;
    Q y;
  };
  std::vector<Pt> pts;
  std::vector<Pt> unknown;
  for (int i = i0; i <= p.degree(); ++i) {
    const Series& c = p[i];
    if (c.is_exact_zero()) continue;
    if (c.is_zero())
      unknown.push_back({i, *c.precision()});
    else
      pts.push_back({i, c.valuation().value()});
  }
  // Lower convex hull, monotone chain.
  std::vector<Pt> hull;
  auto cross = [](const Pt& o, const Pt& a, const Pt& b) {
    return Q(a.x - o.x) * (b.y - o.y) - (a.y - o.y) * Q(b.x - o.x);
  };
  for (const Pt& q : pts) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), q) <= Q(0)) hull.pop_back();
    hull.push_back(q);
  }
  for (const Pt& u : unknown) {
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
      if (hull[k].x < u.x && u.x < hull[k + 1].x) {
        const Q h = hull[k].y + (hull[k + 1].y - hull[k].y) * Q(u.x - hull[k].x, hull[k + 1].x - hull[k].x);
        if (u.y < h) throw PrecisionExhausted("coefficient of z^" + std::to_string(u.x) + " is too imprecise");
      }
    }
  }
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const int len = hull[k + 1].x - hull[k].x;
    out.push_back({Valuation((hull[k].y - hull[k + 1].y) * Q(1, len)), len});
  }
  return out;
}

std::vector<Valuation> root_valuations(const std::vector<NewtonSegment>& segments) {
  std::vector<Valuation> v;
  for (const NewtonSegment& s : segments)
    for (int i = 0; i < s.length; ++i) v.push_back(s.root_valuation);
  std::sort(v.begin(), v.end());
  return v;
}

int count_zeros_in_disk(const SeriesPoly& p, const Series& center, const Q& radius_val) {
  int n = 0;
  for (const NewtonSegment& s : newton_polygon(taylor_shift(p, center)))
    if (s.root_valuation >= Valuation(radius_val)) n += s.length;
  return n;
}

namespace {

template <class C>
std::string poly_str_impl(const Poly<C>& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const C& c = p[i];
    if (is_trim_zero(c)) continue;
    const std::string zp = i == 0 ? std::string() : (i == 1 ? var : var + "^" + std::to_string(i));
    const std::string cs = c.str();
    const bool single = cs.find(" + ") == std::string::npos && cs.find(" - ") == std::string::npos;
    std::string term;
    if (zp.empty())
      term = cs;
    else if (!single)
      term = "(" + cs + ")*" + zp;
    else if (cs == "1")
      term = zp;
    else if (cs == "-1")
      term = "-" + zp;
    else
      term = cs + "*" + zp;
    if (out.empty())
      out = term;
    else if (single && term[0] == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + (zp.empty() && !single ? "(" + term + ")" : term);
  }
  return out;
}

}  // namespace

std::string poly_str(const SeriesPoly& p, const std::string& var) { return poly_str_impl(p, var); }
std::string poly_str(const BasePoly& p, const std::string& var) { return poly_str_impl(p, var); }

}  // namespace nadyn
