#include "nadyn/ratmap.hpp"

#include <numeric>

namespace nadyn {

namespace {

template <class C>
Poly<C> coerce_poly(const Poly<C>& p, GroundField f) {
  if (f.is_rationals()) return p;
  return p.map([f](const C& c) { return level_coerce(c, f); });
}

int exponent_gcd(const SeriesPoly& p, int g) {
  for (int i = 1; i <= p.degree() && g != 1; ++i)
    if (!p[i].is_exact_zero()) g = std::gcd(g, i);
  return g;
}

SeriesPoly compress(const SeriesPoly& p, int g) {
  if (g <= 1 || p.is_zero()) return p;
  std::vector<Series> c(static_cast<std::size_t>(p.degree() / g) + 1);
  for (int i = 0; i <= p.degree(); i += g) c[static_cast<std::size_t>(i / g)] = p[i];
  return SeriesPoly(std::move(c));
}

// Determinant of the Sylvester matrix by fraction-free elimination. Entries
// that are exact stay exact.
Series sylvester_determinant(const SeriesPoly& p, const SeriesPoly& q, const PrecisionContext& ctx) {
  const int m = p.degree(), n = q.degree();
  const int N = m + n;
  std::vector<std::vector<Series>> a(static_cast<std::size_t>(N), std::vector<Series>(static_cast<std::size_t>(N)));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) a[r][r + m - i] = p[i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) a[n + r][r + n - i] = q[i];
  Series prev(1);
  bool negate = false;
  for (int k = 0; k < N; ++k) {
    int piv = -1;
    bool imprecise = false;
    for (int r = k; r < N; ++r) {
      const Series& e = a[r][k];
      if (e.is_zero()) {
        imprecise = imprecise || !e.is_exact_zero();
        continue;
      }
      if (piv < 0 || e.valuation() < a[piv][k].valuation()) piv = r;
    }
    if (piv < 0) {
      if (imprecise) throw PrecisionExhausted("resultant pivot vanishes to precision");
      return Series();
    }
    if (piv != k) {
      std::swap(a[piv], a[k]);
      negate = !negate;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) {
        const Series num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        a[i][j] = prev.is_one() ? num : divide(num, prev, ctx);
      }
      a[i][k] = Series();
    }
    prev = a[k][k];
  }
  return negate ? -prev : prev;
}

}  // namespace

ResidueMap make_residue_map(GroundField f, const BasePoly& num_in, const BasePoly& den_in) {
  BasePoly num = coerce_poly(num_in, f), den = coerce_poly(den_in, f);
  if (num.is_zero() && den.is_zero()) throw std::invalid_argument("numerator and denominator both zero");
  const BaseElem one(Scalar(f, 1));
  if (den.is_zero()) return ResidueMap::trusted(f, BasePoly::constant(one), BasePoly());
  if (num.is_zero()) return ResidueMap::trusted(f, BasePoly(), BasePoly::constant(one));
  const BasePoly g = gcd(num, den);
  if (g.degree() > 0) {
    num = exact_div(num, g);
    den = exact_div(den, g);
  }
  const BaseElem inv = den.leading().inverse();
  return ResidueMap::trusted(f, num.scaled(inv), den.scaled(inv));
}

void certify_coprime(const SeriesPoly& p_in, const SeriesPoly& q_in, const PrecisionContext& ctx) {
  if (p_in.is_zero() && q_in.is_zero()) throw std::invalid_argument("numerator and denominator both zero");
  if (p_in.is_zero()) {
    if (q_in.degree() > 0) throw CommonFactor();
    return;
  }
  if (q_in.is_zero()) {
    if (p_in.degree() > 0) throw CommonFactor();
    return;
  }
  auto [p, q] = normalize_pair(p_in, q_in);
  if (p.degree() == 0 || q.degree() == 0) {
    const Series& c = p.degree() == 0 ? p[0] : q[0];
    if (c.is_zero()) throw PrecisionExhausted("constant part vanishes to precision");
    return;
  }
  if (p.low_order() > 0 && q.low_order() > 0) throw CommonFactor();
  // Good reduction certifies a unit resultant.
  try {
    const BasePoly pr = p.map([](const Series& c) { return c.residue(); });
    const BasePoly qr = q.map([](const Series& c) { return c.residue(); });
    const int d = std::max(p.degree(), q.degree());
    if (std::max(pr.degree(), qr.degree()) == d && gcd(pr, qr).degree() == 0) return;
  } catch (const PrecisionExhausted&) {
  }
  const int g = exponent_gcd(q, exponent_gcd(p, 0));
  if (g > 1) {
    p = compress(p, g);
    q = compress(q, g);
  }
  for (const SeriesPoly* mono : {&p, &q}) {
    int nonzero = 0;
    for (const Series& c : mono->coeffs()) nonzero += !c.is_exact_zero();
    if (nonzero == 1) {
      const SeriesPoly& other = mono == &p ? q : p;
      if (mono->degree() > 0 && other[0].is_zero()) {
        if (other[0].is_exact_zero()) throw CommonFactor();
        throw PrecisionExhausted("resultant vanishes to precision");
      }
      return;
    }
  }
  const Series res = sylvester_determinant(p, q, ctx);
  if (res.is_exact_zero()) throw CommonFactor();
  if (res.is_zero()) throw PrecisionExhausted("resultant vanishes to precision");
}

SeriesMap make_series_map(GroundField f, const SeriesPoly& num_in, const SeriesPoly& den_in,
                          const PrecisionContext& ctx) {
  const SeriesPoly num = coerce_poly(num_in, f), den = coerce_poly(den_in, f);
  for (const SeriesPoly* p : {&num, &den})
    for (const Series& c : p->coeffs()) check_denominators(c, ctx);
  certify_coprime(num, den, ctx);
  return SeriesMap::trusted(f, num, den);
}

std::pair<SeriesPoly, SeriesPoly> normalize_pair(const SeriesPoly& num, const SeriesPoly& den) {
  Valuation known = Valuation::infinity();
  Valuation bound = Valuation::infinity();
  for (const SeriesPoly* p : {&num, &den})
    for (const Series& c : p->coeffs()) {
      known = min(known, c.valuation());
      bound = min(bound, c.valuation_lower_bound());
    }
  if (known.is_infinite()) throw PrecisionExhausted("every coefficient vanishes to precision");
  if (bound < known) throw PrecisionExhausted("minimum coefficient valuation hidden by truncation");
  const Q l = known.value();
  if (l.is_zero()) return {num, den};
  auto shift = [&l](const Series& c) { return c.shifted(-l); };
  return {num.map(shift), den.map(shift)};
}

SeriesMap normalize_map(const SeriesMap& f) {
  auto [n, d] = normalize_pair(f.num(), f.den());
  return SeriesMap::trusted(f.field(), std::move(n), std::move(d));
}

ResidueMap reduce_pair(GroundField f, const SeriesPoly& num, const SeriesPoly& den) {
  auto [n, d] = normalize_pair(num, den);
  auto res = [](const Series& c) { return c.residue(); };
  return make_residue_map(f, n.map(res), d.map(res));
}

ResidueMap finish_composite(GroundField f, BasePoly num, BasePoly den, const PrecisionContext&) {
  return make_residue_map(f, num, den);
}

SeriesMap finish_composite(GroundField f, SeriesPoly num, SeriesPoly den, const PrecisionContext&) {
  auto [n, d] = normalize_pair(num, den);
  return SeriesMap::trusted(f, std::move(n), std::move(d));
}

Valuation spherical_distance(const SeriesPoint& z, const SeriesPoint& w) {
  const Valuation top = (z.x() * w.y() - z.y() * w.x()).valuation();
  if (top.is_infinite()) return top;
  const Valuation a = min(z.x().valuation(), z.y().valuation());
  const Valuation b = min(w.x().valuation(), w.y().valuation());
  return Valuation(top.value() - a.value() - b.value());
}

}  // namespace nadyn
