#include "nadyn/berkovich.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "nadyn/errors.hpp"

namespace nadyn {

namespace {

using PolyPair = std::pair<SeriesPoly, SeriesPoly>;

SeriesPoly shift_coeffs(const SeriesPoly& p, const Q& e) {
  return p.map([&e](const Series& c) { return c.shifted(e); });
}

// The pair of f o (a + t^r z).
PolyPair precompose_affine(const SeriesMap& f, const Series& a, const Q& r) {
  auto conj = [&](const SeriesPoly& p) {
    const SeriesPoly shifted = taylor_shift(p, a);
    if (r.is_zero()) return shifted;
    std::vector<Series> c(shifted.coeffs());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = c[i].shifted(r * Q(static_cast<std::int64_t>(i)));
    return SeriesPoly(std::move(c));
  };
  return {conj(f.num()), conj(f.den())};
}

BasePoly residues(const SeriesPoly& p) {
  return p.map([](const Series& c) { return c.residue(); });
}

// Image of the Gauss point under num/den, by zooming towards the constant
// value the reduction collapses to.
TypeIIPoint gauss_image(SeriesPoly n, SeriesPoly d, GroundField f, const PrecisionContext& ctx) {
  std::tie(n, d) = normalize_pair(n, d);
  bool inverted = false;
  std::vector<Series::Term> center;
  Q r(0);
  const Q cap = ctx.t_order * Q(2);
  for (int step = 0;; ++step) {
    const ResidueMap red = make_residue_map(f, residues(n), residues(d));
    if (!red.is_constant()) break;
    if (red.den().is_zero()) {
      if (step > 0) throw std::logic_error("zoom reached infinity after a finite step");
      std::swap(n, d);
      inverted = true;
      continue;
    }
    const BaseElem c = red.num().is_zero() ? BaseElem() : red.num()[0];
    const SeriesPoly rest = c.is_zero() ? n : n - d.scaled(Series(c));
    Valuation known = Valuation::infinity(), bound = Valuation::infinity();
    bool exact = true;
    for (const Series& x : rest.coeffs()) {
      known = min(known, x.valuation());
      bound = min(bound, x.valuation_lower_bound());
      exact = exact && x.is_exact();
    }
    if (known.is_infinite()) {
      if (exact) throw std::invalid_argument("image of a constant map");
      throw PrecisionExhausted("image point indistinguishable from a type I point");
    }
    if (bound < known) throw PrecisionExhausted("image point indistinguishable from a type I point");
    const Q delta = known.value();
    if (!c.is_zero()) center.push_back({r, c});
    n = shift_coeffs(rest, -delta);
    r += delta;
    if (r > cap) throw PrecisionExhausted("zoom radius beyond twice the working precision");
  }
  const Series a = Series::from_terms(std::move(center), std::nullopt);
  if (!inverted) return {a, r};
  // The accumulated frame is 1/(a + t^r z).
  if (!a.is_zero() && a.valuation().value() < r) {
    const Q v = a.valuation().value();
    return {a.inverse_to(r - v - v), r - v - v};
  }
  return {Series(), -r};
}

SeriesMap inverse_mobius(const SeriesMap& m) {
  // (a z + b)/(c z + d) has inverse (d z - b)/(-c z + a).
  const Series &b = m.num()[0], &a = m.num()[1], &d = m.den()[0], &c = m.den()[1];
  return SeriesMap::trusted(m.field(), SeriesPoly(std::vector<Series>{-b, d}), SeriesPoly(std::vector<Series>{a, -c}));
}

}  // namespace

TypeIIPoint::TypeIIPoint(const Series& center, const Q& radius_val) : radius_(radius_val) {
  if (center.precision() && *center.precision() < radius_val)
    throw PrecisionExhausted("disk center " + center.str() + " unknown up to radius " + radius_val.str());
  center_ = center.head(radius_val);
}

TypeIIPoint TypeIIPoint::from_chart(Chart chart, const Series& center, const Q& radius_val) {
  if (chart == Chart::Affine) return {center, radius_val};
  if (!center.is_zero() && center.valuation().value() < radius_val) {
    const Q v = center.valuation().value();
    return {center.inverse_to(radius_val - v - v), radius_val - v - v};
  }
  if (center.precision() && *center.precision() < radius_val)
    throw PrecisionExhausted("disk center " + center.str() + " unknown up to radius " + radius_val.str());
  return {Series(), -radius_val};
}

bool TypeIIPoint::contains(const Series& a) const {
  const Series diff = a - center_;
  if (diff.valuation() < Valuation(radius_)) return false;
  if (diff.precision() && *diff.precision() < radius_)
    throw PrecisionExhausted("membership of " + a.str() + " undecided at working precision");
  return true;
}

std::string TypeIIPoint::str() const { return "(" + center_.str() + ", " + radius_.str() + ")"; }

MovingFrame::MovingFrame(SeriesMap m) : m_(std::move(m)) {
  if (m_.degree() != 1) throw std::invalid_argument("moving frame must have degree one: " + m_.str());
  const Series det = m_.num()[1] * m_.den()[0] - m_.num()[0] * m_.den()[1];
  if (det.is_zero()) {
    if (det.is_exact_zero()) throw std::invalid_argument("moving frame is not invertible: " + m_.str());
    throw PrecisionExhausted("frame determinant vanishes to precision");
  }
}

MovingFrame MovingFrame::affine(const Series& a, const Q& r, GroundField f) {
  return MovingFrame(SeriesMap::trusted(f, SeriesPoly(std::vector<Series>{a.in_field(f), Series::t_power(r)}),
                                        SeriesPoly::constant(Series(BaseElem(Scalar(f, 1))))));
}

TypeIIPoint point_of_frame(const MovingFrame& m, const PrecisionContext& ctx) {
  return image_point(m.map(), TypeIIPoint::gauss(), ctx);
}

MovingFrame frame_of_point(const TypeIIPoint& xi, GroundField f) {
  return MovingFrame::affine(xi.center(), xi.radius_val(), f);
}

TypeIIPoint image_point(const SeriesMap& f, const TypeIIPoint& xi, const PrecisionContext& ctx) {
  if (f.is_constant()) throw std::invalid_argument("image_point of a constant map");
  auto [n, d] = precompose_affine(f, xi.center(), xi.radius_val());
  return gauss_image(std::move(n), std::move(d), f.field(), ctx);
}

ResidueMap frame_reduction(const SeriesMap& f, const TypeIIPoint& xi, const TypeIIPoint& eta,
                           const PrecisionContext&) {
  auto [n, d] = precompose_affine(f, xi.center(), xi.radius_val());
  if (!eta.center().is_exact_zero()) n = n - d.scaled(eta.center());
  if (!eta.radius_val().is_zero()) d = shift_coeffs(d, eta.radius_val());
  return reduce_pair(f.field(), n, d);
}

int local_degree(const SeriesMap& f, const TypeIIPoint& xi, const PrecisionContext& ctx) {
  return frame_reduction(f, xi, image_point(f, xi, ctx), ctx).degree();
}

ResidueMap frame_change(const MovingFrame& l, const MovingFrame& m, const PrecisionContext& ctx) {
  const SeriesMap c = compose(inverse_mobius(l.map()), m.map(), ctx);
  return reduce_pair(m.map().field(), c.num(), c.den());
}

ResidueMap tangent_map(const SeriesMap& f, const TypeIIPoint& xi, int q, const PrecisionContext& ctx) {
  if (q < 1) throw std::invalid_argument("tangent_map: period must be positive");
  std::vector<TypeIIPoint> orbit{xi};
  for (int i = 0; i < q; ++i) orbit.push_back(image_point(f, orbit.back(), ctx));
  if (!(orbit.back() == xi))
    throw NotPeriodic(xi.str() + " maps to " + orbit.back().str() + " after " + std::to_string(q) + " steps");
  ResidueMap h = identity_map<BaseElem>(f.field());
  for (int i = 0; i < q; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    h = compose(frame_reduction(f, orbit[ui], orbit[ui + 1], ctx), h);
  }
  return h;
}

ResidueMap tangent_map_direct(const SeriesMap& f, const TypeIIPoint& xi, int q, const PrecisionContext& ctx) {
  if (q < 1) throw std::invalid_argument("tangent_map: period must be positive");
  const SeriesMap fq = iterate(f, q, ctx);
  const TypeIIPoint back = image_point(fq, xi, ctx);
  if (!(back == xi)) throw NotPeriodic(xi.str() + " maps to " + back.str() + " under the iterate");
  return frame_reduction(fq, xi, xi, ctx);
}

OrbitResult find_periodic_orbit(const SeriesMap& f, const TypeIIPoint& seed, int max_period, int max_transient,
                                const PrecisionContext& ctx) {
  if (max_period < 1 || max_transient < 0) throw std::invalid_argument("find_periodic_orbit: invalid budget");
  OrbitResult out;
  std::vector<TypeIIPoint> seen;
  TypeIIPoint x = seed;
  for (int step = 0; step <= max_period + max_transient; ++step) {
    const auto it = std::find(seen.begin(), seen.end(), x);
    if (it != seen.end()) {
      const auto j = static_cast<int>(it - seen.begin());
      const int period = static_cast<int>(seen.size()) - j;
      if (period > max_period || j > max_transient) break;
      out.periodic = true;
      out.transient = j;
      out.period = period;
      out.orbit.assign(it, seen.end());
      return out;
    }
    seen.push_back(x);
    if (step < max_period + max_transient) x = image_point(f, x, ctx);
  }
  out.orbit = std::move(seen);
  return out;
}

}  // namespace nadyn
