#include "nadyn/rescaling.hpp"

#include <algorithm>
#include <stdexcept>

#include "nadyn/errors.hpp"
#include "nadyn/reduction.hpp"

namespace nadyn {

namespace {

ResidueMap mobius_inverse(const ResidueMap& m) {
  const BaseElem &b = m.num()[0], &a = m.num()[1], &d = m.den()[0], &c = m.den()[1];
  return make_residue_map(m.field(), BasePoly(std::vector<BaseElem>{-b, d}), BasePoly(std::vector<BaseElem>{a, -c}));
}

std::size_t bit_size(const BaseElem& x) {
  std::size_t n = 0;
  for (const Scalar& c : x.numerator().coeffs()) n += c.bit_size();
  for (const Scalar& c : x.denominator().coeffs()) n += c.bit_size();
  return n;
}

// Logarithmic size of x at the place s = infinity (the s-degree) or at s = 0
// (minus the order of vanishing).
Q place_size(const BaseElem& x, bool at_infinity) {
  const auto m = static_cast<std::int64_t>(x.exponent_denominator());
  if (!at_infinity) return Q(-x.shift(), m);
  return Q(x.shift() + x.numerator().degree() - x.denominator().degree(), m);
}

// Sufficient condition for an orbit to escape at one place: once x is large
// enough that the leading terms of P and Q dominate and |g(x)| > |x|, every
// later point is larger still, so the orbit is infinite.
struct EscapeTest {
  bool at_infinity = true;
  bool usable = false;
  Q threshold;
  Q lead;
  int excess = 0;

  EscapeTest(const ResidueMap& g, bool inf) : at_infinity(inf) {
    const BasePoly &p = g.num(), &q = g.den();
    excess = p.degree() - q.degree();
    if (excess < 1 || q.is_zero()) return;
    usable = true;
    lead = place_size(p.leading(), inf) - place_size(q.leading(), inf);
    bool first = true;
    for (const BasePoly* poly : {&p, &q}) {
      const int n = poly->degree();
      const Q top = place_size(poly->leading(), inf);
      for (int i = 0; i < n; ++i) {
        if ((*poly)[i].is_zero()) continue;
        const Q r = (place_size((*poly)[i], inf) - top) / Q(n - i);
        if (first || r > threshold) threshold = r;
        first = false;
      }
    }
  }

  [[nodiscard]] bool escapes(const ResiduePoint& x) const {
    if (!usable || x.is_infinity() || x.x().is_zero()) return false;
    const Q l = place_size(x.x(), at_infinity);
    if (l <= threshold) return false;
    return lead + Q(excess - 1) * l > Q(0);
  }
};

std::optional<Q> point_height(const ResiduePoint& x) {
  if (x.is_infinity()) return std::nullopt;
  return x.x().height();
}

OrbitShape follow_orbit(const ResidueMap& g, const ResiduePoint& start, int budget, const OrbitCaps& caps,
                        const EscapeTest& at_inf, const EscapeTest& at_zero) {
  OrbitShape o;
  o.start = start;
  std::vector<ResiduePoint> seen{start};
  ResiduePoint x = start;
  auto note = [&](const ResiduePoint& y) {
    o.escape_certified = o.escape_certified || at_inf.escapes(y) || at_zero.escapes(y);
  };
  note(x);
  o.stop_reason = "budget";
  o.steps = budget;
  // g(x) has height at most d h(x) + c; steps whose bound is far past the
  // caps are not taken.
  const int d = g.degree();
  Q c(0);
  std::size_t c_bits = 0;
  for (const BasePoly* p : {&g.num(), &g.den()})
    for (int i = 0; i <= p->degree(); ++i) {
      c += (*p)[i].height();
      c_bits += bit_size((*p)[i]);
    }
  for (int step = 1; step <= budget; ++step) {
    if (!x.is_infinity() && (Q(d) * x.x().height() + c > Q(2) * caps.max_height ||
                             static_cast<std::size_t>(d) * bit_size(x.x()) + c_bits > 2 * caps.max_bits)) {
      o.steps = step - 1;
      o.stop_reason = "size_cap";
      break;
    }
    x = evaluate(g, x);
    for (std::size_t j = 0; j < seen.size(); ++j) {
      if (same_point(seen[j], x)) {
        o.closed = true;
        o.preperiod = static_cast<int>(j);
        o.period = static_cast<int>(seen.size() - j);
        o.steps = step;
        o.stop_reason = "cycle";
        return o;
      }
    }
    seen.push_back(x);
    note(x);
    if (!x.is_infinity() && (x.x().height() > caps.max_height || bit_size(x.x()) > caps.max_bits)) {
      o.steps = step;
      o.stop_reason = "size_cap";
      break;
    }
  }
  if (seen.size() >= 4) {
    bool growing = true;
    for (std::size_t k = seen.size() - 3; k < seen.size() && growing; ++k) {
      const auto a = point_height(seen[k - 1]), b = point_height(seen[k]);
      growing = a && b && *a < *b;
    }
    o.height_growth = growing;
  }
  return o;
}

PcfVerdict verdict_from(std::vector<OrbitShape> orbits, int budget, bool partial) {
  PcfVerdict v;
  v.budget = budget;
  v.partial = partial;
  for (const OrbitShape& o : orbits) {
    if (o.closed) continue;
    v.status = PcfStatus::NoCycleWithinBudget;
    v.height_growth = v.height_growth || o.height_growth;
    v.escape_certified = v.escape_certified || o.escape_certified;
  }
  v.orbits = std::move(orbits);
  return v;
}

std::vector<TypeIIPoint> forward_orbit(const SeriesMap& f, const TypeIIPoint& xi, int steps,
                                       const PrecisionContext& ctx) {
  std::vector<TypeIIPoint> orbit{xi};
  for (int i = 0; i < steps; ++i) orbit.push_back(image_point(f, orbit.back(), ctx));
  return orbit;
}

// Reduction of F_last^-1 o f^l o F_first along a computed orbit.
ResidueMap chain_reduction(const SeriesMap& f, const std::vector<TypeIIPoint>& orbit, const PrecisionContext& ctx) {
  ResidueMap h = identity_map<BaseElem>(f.field());
  for (std::size_t i = 0; i + 1 < orbit.size(); ++i) h = compose(frame_reduction(f, orbit[i], orbit[i + 1], ctx), h);
  return h;
}

// Smallest l <= max_l with f^l(from) = to. The search stops early when the
// orbit cycles or leaves the working precision.
std::optional<int> steps_to(const SeriesMap& f, const TypeIIPoint& from, const TypeIIPoint& to, int max_l,
                            const PrecisionContext& ctx, bool& truncated) {
  std::vector<TypeIIPoint> seen;
  TypeIIPoint x = from;
  for (int l = 0; l <= max_l; ++l) {
    if (x == to) return l;
    if (std::find(seen.begin(), seen.end(), x) != seen.end()) return std::nullopt;
    seen.push_back(x);
    if (l == max_l) break;
    try {
      x = image_point(f, x, ctx);
    } catch (const PrecisionExhausted&) {
      truncated = true;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::string to_string(Tameness t) { return t == Tameness::Tame ? "Tame" : "Unknown"; }

std::vector<std::string> CriticalSet::strs() const {
  std::vector<std::string> out;
  for (const ResiduePoint& x : points) out.push_back(x.str());
  for (int k : unresolved_degrees) out.push_back("unresolved(" + std::to_string(k) + ")");
  return out;
}

CriticalSet critical_set(const ResidueMap& g) {
  if (g.is_constant()) throw std::invalid_argument("critical set of a constant map");
  const BasePoly w = wronskian(g);
  if (w.is_zero()) throw std::invalid_argument("critical set of an inseparable map");
  CriticalSet out;
  const RootSet rs = find_roots(w);
  for (const auto& [r, k] : rs.roots) out.points.push_back(ResiduePoint::affine(r));
  out.unresolved_degrees = rs.unresolved_degrees;
  if (w.degree() < 2 * g.degree() - 2) out.points.push_back(ResiduePoint::infinity());
  return out;
}

CriticalSet nontrivial_critical_set(const ResidueMap& g) {
  const auto sep = separable_decomposition(g);
  CriticalSet crit = critical_set(sep.separable_part);
  if (sep.frobenius_exponent == 0) return crit;
  unsigned q = 1;
  for (int i = 0; i < sep.frobenius_exponent; ++i) q *= g.field().characteristic();
  CriticalSet out;
  for (int k : crit.unresolved_degrees) out.unresolved_degrees.push_back(k * static_cast<int>(q));
  for (const ResiduePoint& x : crit.points) {
    if (x.is_infinity()) {
      out.points.push_back(x);
      continue;
    }
    try {
      out.points.push_back(ResiduePoint::affine(root_extract(x.x().in_field(g.field()), q)));
    } catch (const Unresolved&) {
      out.unresolved_degrees.push_back(static_cast<int>(q));
    }
  }
  return out;
}

std::string PcfVerdict::str() const {
  if (status == PcfStatus::PCF) return "PCF";
  return "NoCycleWithinBudget(" + std::to_string(budget) + ", height_growth=" + (height_growth ? "true" : "false") +
         ")";
}

PcfVerdict pcf_via_critical_points(const ResidueMap& g, int budget, const OrbitCaps& caps) {
  if (budget < 1) throw std::invalid_argument("PCF budget must be positive");
  const CriticalSet crit = nontrivial_critical_set(g);
  const EscapeTest at_inf(g, true), at_zero(g, false);
  std::vector<OrbitShape> orbits;
  for (const ResiduePoint& c : crit.points) orbits.push_back(follow_orbit(g, c, budget, caps, at_inf, at_zero));
  return verdict_from(std::move(orbits), budget, !crit.complete());
}

PcfVerdict pcf_via_critical_values(const ResidueMap& g, int budget, const OrbitCaps& caps) {
  if (budget < 1) throw std::invalid_argument("PCF budget must be positive");
  const auto sep = separable_decomposition(g);
  const CriticalSet crit = critical_set(sep.separable_part);
  const EscapeTest at_inf(g, true), at_zero(g, false);
  std::vector<OrbitShape> orbits;
  for (const ResiduePoint& c : crit.points)
    orbits.push_back(follow_orbit(g, evaluate(sep.separable_part, c), budget - 1, caps, at_inf, at_zero));
  return verdict_from(std::move(orbits), budget, !crit.complete());
}

PcfVerdict pcf_at_nontrivial_crit(const ResidueMap& g, int budget, const OrbitCaps& caps) {
  const PcfVerdict by_points = pcf_via_critical_points(g, budget, caps);
  PcfVerdict by_values = pcf_via_critical_values(g, budget, caps);
  // A critical point that is itself periodic is seen one step later from its
  // value; allow that step before declaring a disagreement.
  if (by_values.status != by_points.status && by_points.status == PcfStatus::PCF)
    by_values = pcf_via_critical_values(g, budget + 1, caps);
  if (by_values.status != by_points.status)
    throw std::logic_error("critical-point and critical-value PCF routes disagree for " + g.str());
  return by_points;
}

ResidueMap frame_limit(const SeriesMap& f, const MovingFrame& m, int q, const PrecisionContext& ctx) {
  const TypeIIPoint xi = point_of_frame(m, ctx);
  const ResidueMap h = tangent_map(f, xi, q, ctx);
  const MovingFrame canonical = frame_of_point(xi, f.field());
  if (canonical.map() == m.map()) return h;
  const ResidueMap change = frame_change(canonical, m, ctx);
  return compose(mobius_inverse(change), compose(h, change));
}

ResidueMap rescaling_limit(const SeriesMap& f, const MovingFrame& m, int q, const PrecisionContext& ctx) {
  ResidueMap g = frame_limit(f, m, q, ctx);
  const int d0 = nontrivial_degree(g);
  if (d0 < 2)
    throw DegenerateLimit(g.str() + " has nontrivial degree " + std::to_string(d0));
  return g;
}

std::optional<int> minimal_period(const SeriesMap& f, const TypeIIPoint& xi, int q, const PrecisionContext& ctx) {
  const std::vector<TypeIIPoint> orbit = forward_orbit(f, xi, q, ctx);
  if (!(orbit.back() == xi)) return std::nullopt;
  for (int k = 1; k <= q; ++k)
    if (q % k == 0 && orbit[static_cast<std::size_t>(k)] == xi) return k;
  return q;
}

bool frames_equivalent(const MovingFrame& m, const MovingFrame& l, const PrecisionContext& ctx) {
  return point_of_frame(m, ctx) == point_of_frame(l, ctx);
}

std::string DependenceVerdict::str() const {
  if (dependent) return "Dependent(" + std::to_string(l) + ")";
  return "IndependentWithinBudget(" + std::to_string(budget) + ")";
}

DependenceVerdict dynamically_dependent(const SeriesMap& f, const MovingFrame& m, const MovingFrame& l, int max_l,
                                        const PrecisionContext& ctx) {
  if (max_l < 0) throw std::invalid_argument("dependence budget must be non-negative");
  DependenceVerdict v;
  v.budget = max_l;
  const TypeIIPoint xi = point_of_frame(m, ctx), eta = point_of_frame(l, ctx);
  std::optional<int> k = steps_to(f, xi, eta, max_l, ctx, v.search_truncated);
  v.forward = k.has_value();
  if (!k) k = steps_to(f, eta, xi, max_l, ctx, v.search_truncated);
  if (!k) return v;
  v.dependent = true;
  v.l = *k;
  const MovingFrame& src = v.forward ? m : l;
  const MovingFrame& dst = v.forward ? l : m;
  const TypeIIPoint& from = v.forward ? xi : eta;
  const std::vector<TypeIIPoint> orbit = forward_orbit(f, from, *k, ctx);
  const GroundField fld = f.field();
  ResidueMap cert = chain_reduction(f, orbit, ctx);
  cert = compose(frame_change(dst, frame_of_point(orbit.back(), fld), ctx),
                 compose(cert, frame_change(frame_of_point(from, fld), src, ctx)));
  if (cert.is_constant()) throw std::logic_error("dependence certificate reduced to a constant");
  v.certificate = cert;
  return v;
}

RescalingEntry analyze_frame(const SeriesMap& f, const FrameSpec& fs, int pcf_budget,
                             std::vector<std::string>& warnings, const PrecisionContext& ctx) {
  RescalingEntry e;
  e.frame = fs.frame.str();
  e.period = fs.period;
  try {
    e.point = point_of_frame(fs.frame, ctx);
    e.minimal_period = minimal_period(f, *e.point, fs.period, ctx);
    if (!e.minimal_period) throw NotPeriodic(e.point->str() + " is not " + std::to_string(fs.period) + "-periodic");
    e.limit = frame_limit(f, fs.frame, fs.period, ctx);
    e.nontrivial_degree = nontrivial_degree(*e.limit);
    e.degenerate = e.nontrivial_degree < 2;
    e.pcf = pcf_at_nontrivial_crit(*e.limit, pcf_budget);
    e.tameness = tameness_certificate(*e.limit);
    if (e.degenerate)
      warnings.push_back("limit " + e.limit->str() + " for frame " + e.frame + " has nontrivial degree " +
                         std::to_string(e.nontrivial_degree) + " and is not a rescaling limit");
    if (e.pcf->partial) warnings.push_back("unresolved critical points skipped for frame " + e.frame);
    if (*e.tameness == Tameness::Unknown) warnings.push_back("tameness of the limit for frame " + e.frame + " is Unknown");
  } catch (const PrecisionExhausted& err) {
    e.error = err.what();
    e.precision_exhausted = true;
    warnings.push_back("frame " + e.frame + ": " + err.what());
  } catch (const Error& err) {
    e.error = err.what();
    warnings.push_back("frame " + e.frame + ": " + err.what());
  }
  return e;
}

RescalingReport audit_independent_count(const SeriesMap& f, const std::vector<FrameSpec>& frames,
                                        const AuditBudgets& budgets, const PrecisionContext& ctx) {
  if (frames.empty()) throw std::invalid_argument("audit needs at least one frame");
  RescalingReport rep;
  rep.dependence_budget = budgets.dependence;
  rep.nontrivial_degree = nontrivial_degree(f);
  rep.good_reduction = has_good_reduction(f);
  const Tameness family_tameness = tameness_certificate(f);
  rep.bound_audit.hypothesis_verified = family_tameness == Tameness::Tame;
  rep.bound_audit.limit_2d_minus_2 = 2 * rep.nontrivial_degree - 2;
  if (!rep.bound_audit.hypothesis_verified)
    rep.warnings.push_back("tameness of the separable part is not certified; the bound hypothesis is unverified");

  for (const FrameSpec& fs : frames) rep.rescalings.push_back(analyze_frame(f, fs, budgets.pcf, rep.warnings, ctx));

  const std::size_t n = frames.size();
  rep.dependence_matrix.assign(n, std::vector<DependenceVerdict>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      DependenceVerdict v;
      try {
        v = dynamically_dependent(f, frames[i].frame, frames[j].frame, budgets.dependence, ctx);
      } catch (const PrecisionExhausted& err) {
        v.budget = budgets.dependence;
        rep.warnings.push_back("dependence of frames " + std::to_string(i) + " and " + std::to_string(j) +
                               " undecided: " + err.what());
      }
      if (v.search_truncated)
        rep.warnings.push_back("dependence search for frames " + std::to_string(i) + " and " + std::to_string(j) +
                               " stopped when an orbit left the working precision");
      rep.dependence_matrix[i][j] = v;
      if (i == j) continue;
      v.forward = !v.forward;
      rep.dependence_matrix[j][i] = v;
    }
  }

  // Greedy selection of pairwise independent non-PCF rescalings.
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < n; ++i) {
    const RescalingEntry& e = rep.rescalings[i];
    if (!e.limit || e.degenerate || !e.pcf || e.pcf->status == PcfStatus::PCF) continue;
    const bool independent = std::none_of(chosen.begin(), chosen.end(), [&](std::size_t j) {
      return rep.dependence_matrix[i][j].dependent;
    });
    if (independent) chosen.push_back(i);
  }
  rep.bound_audit.count = static_cast<int>(chosen.size());
  rep.bound_audit.pass = rep.bound_audit.count <= rep.bound_audit.limit_2d_minus_2;

  // Equivalence classes of fixed rescalings.
  std::vector<TypeIIPoint> classes;
  for (const RescalingEntry& e : rep.rescalings) {
    if (!e.limit || e.degenerate || e.minimal_period != 1) continue;
    if (std::find(classes.begin(), classes.end(), *e.point) == classes.end()) classes.push_back(*e.point);
  }
  rep.fixed_classes = static_cast<int>(classes.size());
  rep.single_fixed_class_pass = !rep.good_reduction || rep.fixed_classes <= 1;

  if (!rep.bound_audit.pass)
    throw AuditViolation(std::to_string(rep.bound_audit.count) + " independent non-PCF rescalings exceed 2d - 2 = " +
                             std::to_string(rep.bound_audit.limit_2d_minus_2),
                         rep);
  if (!rep.single_fixed_class_pass)
    throw AuditViolation(std::to_string(rep.fixed_classes) + " fixed rescaling classes for a family with good reduction",
                         rep);
  return rep;
}

}  // namespace nadyn
