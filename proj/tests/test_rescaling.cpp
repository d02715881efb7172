#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "nadyn/errors.hpp"
#include "nadyn/parser.hpp"
#include "nadyn/reduction.hpp"
#include "nadyn/rescaling.hpp"

using namespace nadyn;

namespace {

const ParseContext QQ{GroundField::rationals()};

ParseContext char_p(std::uint32_t p) { return ParseContext(GroundField::prime(p)); }
SeriesMap M(const std::string& s, const ParseContext& ctx = QQ) { return parse_map(s, ctx); }
ResidueMap R(const std::string& s, const ParseContext& ctx = QQ) { return parse_residue_map(s, ctx); }
MovingFrame F(const std::string& s, const ParseContext& ctx = QQ) { return MovingFrame(parse_map(s, ctx)); }

const char* kEx1 = "(z^p - (s + t))*(z^p - s)";
const char* kEx3 = "z^(2*p) + t^(1 + 2*p^2)/z^p";

std::string ex2(std::uint32_t p) {
  const std::string b = p == 2 ? "s" : "2";
  return "(t^(3*p^2 + 1)*z^(6*p) + 1)/(t^(3*p^2 + 1)*z^(6*p) + z^p*(z^p - 1)*(z^p - " + b + "))";
}

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("separable decomposition examples") {
  for (std::uint32_t p : {3u, 5u}) {
    const auto d = separable_decomposition(R("z^(2*p)", char_p(p)));
    CHECK(d.separable_part == R("z^2", char_p(p)));
    CHECK(d.frobenius_exponent == 1);
  }
  const auto d2 = separable_decomposition(R("z^4", char_p(2)));
  CHECK(d2.separable_part == R("z", char_p(2)));
  CHECK(d2.frobenius_exponent == 2);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const auto d = separable_decomposition(M(kEx1, char_p(p)));
    CHECK(d.separable_part == M("(z - (s + t))*(z - s)", char_p(p)));
    CHECK(d.frobenius_exponent == 1);
    CHECK(nontrivial_degree(M(kEx3, char_p(p))) == 3);
  }
  CHECK(separable_decomposition(R("z^6")).frobenius_exponent == 0);
}

TEST_CASE("nontrivial critical set examples") {
  for (std::uint32_t p : {3u, 5u}) {
    const ParseContext ctx = char_p(p);
    CHECK(sorted(nontrivial_critical_set(R("(z^p - s)^2", ctx)).strs()) ==
          sorted({"s^(1/" + std::to_string(p) + ")", "inf"}));
  }
  for (std::uint32_t p : {3u, 5u})
    CHECK(sorted(nontrivial_critical_set(R("z^(2*p)", char_p(p))).strs()) == sorted({"0", "inf"}));
  // In characteristic 2, z^4 is Frobenius twice: no nontrivial critical points.
  CHECK(nontrivial_critical_set(R("z^4", char_p(2))).points.empty());
  CHECK(sorted(nontrivial_critical_set(R("z^2")).strs()) == sorted({"0", "inf"}));
  // z^4 + s^2 in characteristic 2 is a Moebius map after Frobenius.
  CHECK(nontrivial_critical_set(R("z^4 + s^2", char_p(2))).points.empty());
  const CriticalSet partial = critical_set(R("z^3 - 3*(s + 1)*z"));
  CHECK(partial.unresolved_degrees == std::vector<int>{2});
  CHECK(partial.strs().back() == "unresolved(2)");
}

TEST_CASE("rescaling limits of the examples") {
  for (std::uint32_t p : {3u, 5u}) {
    const ParseContext ctx = char_p(p);
    CHECK(rescaling_limit(M(kEx1, ctx), F("z", ctx), 1) == R("(z^p - s)^2", ctx));
    CHECK(rescaling_limit(M(kEx3, ctx), F("z", ctx), 1) == R("z^(2*p)", ctx));
    CHECK(rescaling_limit(M(kEx3, ctx), F("t*z", ctx), 2) == R("z^(-2*p^2)", ctx));
  }
  const ParseContext F2 = char_p(2);
  CHECK_THROWS_AS(rescaling_limit(M(kEx1, F2), F("z", F2), 1), DegenerateLimit);
  CHECK(frame_limit(M(kEx1, F2), F("z", F2), 1) == R("z^4 + s^2", F2));
  // In characteristic 2 both limits of the third family have nontrivial degree 1.
  CHECK(frame_limit(M(kEx3, F2), F("z", F2), 1) == R("z^4", F2));
  CHECK(frame_limit(M(kEx3, F2), F("t*z", F2), 2) == R("z^(-8)", F2));
  CHECK_THROWS_AS(rescaling_limit(M(kEx3, F2), F("t*z", F2), 2), DegenerateLimit);
  CHECK_THROWS_AS(rescaling_limit(M(kEx3, F2), F("t*z", F2), 1), NotPeriodic);
  // Equivalent frames give conjugate limits.
  const ResidueMap shifted = frame_limit(M("z^2 + t"), F("z + 1"), 1);
  CHECK(shifted == R("z^2 + 2*z"));
}

TEST_CASE("frames_equivalent examples") {
  CHECK(frames_equivalent(F("z"), F("z + t")));
  CHECK(!frames_equivalent(F("z"), F("t*z")));
  CHECK(frames_equivalent(F("t*z"), F("t*z + t^2")));
  CHECK(frames_equivalent(F("1/z"), F("z")));
}

TEST_CASE("dynamical dependence examples") {
  const SeriesMap f = M("(z^3 + t)/z");
  DependenceVerdict v = dynamically_dependent(f, F("z"), F("z + t"), 24);
  CHECK(v.dependent);
  CHECK(v.l == 0);
  CHECK(v.str() == "Dependent(0)");
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const ParseContext ctx = char_p(p);
    v = dynamically_dependent(M(kEx3, ctx), F("z", ctx), F("t*z", ctx), 24);
    CHECK(!v.dependent);
    CHECK(v.str() == "IndependentWithinBudget(24)");
    v = dynamically_dependent(M(ex2(p), ctx), F("z", ctx), F("t*z", ctx), 24);
    CHECK(!v.dependent);
    v = dynamically_dependent(M(kEx3, ctx), F("t*z", ctx), F("t^(2*p)*z", ctx), 24);
    CHECK(v.dependent);
    CHECK(v.l == 1);
    REQUIRE(v.certificate);
    CHECK(!v.certificate->is_constant());
    CHECK(*v.certificate == frame_reduction(M(kEx3, ctx), point_of_frame(F("t*z", ctx)),
                                            point_of_frame(F("t^(2*p)*z", ctx))));
  }
  v = dynamically_dependent(M("z^2"), F("t*z"), F("t^4*z"), 24);
  CHECK(v.dependent);
  CHECK(v.l == 2);
  CHECK(*v.certificate == R("z^4"));
  v = dynamically_dependent(M("z^2"), F("t^4*z"), F("t*z"), 24);
  CHECK(v.dependent);
  CHECK(!v.forward);
}

TEST_CASE("PCF examples") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const ParseContext ctx = char_p(p);
    CHECK(pcf_at_nontrivial_crit(R("z^(2*p)", ctx), 50).status == PcfStatus::PCF);
    CHECK(pcf_at_nontrivial_crit(R("z^(-2*p^2)", ctx), 50).status == PcfStatus::PCF);
  }
  for (std::uint32_t p : {3u, 5u}) {
    const PcfVerdict v = pcf_at_nontrivial_crit(R("(z^p - s)^2", char_p(p)), 20);
    CHECK(v.status == PcfStatus::NoCycleWithinBudget);
    CHECK(v.height_growth);
    CHECK(v.escape_certified);
    CHECK(v.str() == "NoCycleWithinBudget(20, height_growth=true)");
  }
  const PcfVerdict cheb = pcf_at_nontrivial_crit(R("z^2 - 2"), 50);
  CHECK(cheb.status == PcfStatus::PCF);
  const PcfVerdict basilica = pcf_at_nontrivial_crit(R("z^2 - 1"), 50);
  CHECK(basilica.status == PcfStatus::PCF);
  const PcfVerdict escaping = pcf_at_nontrivial_crit(R("z^2 + 1"), 50);
  CHECK(escaping.status == PcfStatus::NoCycleWithinBudget);
  CHECK(escaping.orbits.front().stop_reason == "size_cap");
  CHECK(pcf_at_nontrivial_crit(R("z^2 + s"), 50).escape_certified);
}

TEST_CASE("tameness examples") {
  CHECK(tameness_certificate(R("z^7 + s")) == Tameness::Tame);
  for (std::uint32_t p : {5u, 7u}) {
    const ParseContext ctx = char_p(p);
    CHECK(tameness_certificate(M("z^2 + t^(1 + 2*p^2)/z", ctx)) == Tameness::Tame);
  }
  CHECK(tameness_certificate(M(kEx3, char_p(3))) == Tameness::Unknown);
  CHECK(tameness_certificate(R("z^3 + z", char_p(3))) == Tameness::Unknown);
  CHECK(to_string(Tameness::Unknown) == "Unknown");
}

TEST_CASE("audit examples") {
  for (std::uint32_t p : {3u, 5u}) {
    const ParseContext ctx = char_p(p);
    const RescalingReport r = audit_independent_count(M(kEx1, ctx), {{F("z", ctx), 1}}, {20, 24});
    CHECK(r.bound_audit.count == 1);
    CHECK(r.bound_audit.limit_2d_minus_2 == 2);
    CHECK(r.bound_audit.pass);
    CHECK(r.bound_audit.hypothesis_verified);
    CHECK(r.fixed_classes == 1);
  }
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const ParseContext ctx = char_p(p);
    const RescalingReport r = audit_independent_count(M(kEx3, ctx), {{F("z", ctx), 1}, {F("t*z", ctx), 2}});
    CHECK(r.bound_audit.count == 0);
    CHECK(r.bound_audit.limit_2d_minus_2 == 4);
    CHECK(r.bound_audit.pass);
    CHECK(r.rescalings[1].limit == R("z^(-2*p^2)", ctx));
    CHECK(r.rescalings[0].pcf->status == PcfStatus::PCF);
    CHECK(r.rescalings[1].pcf->status == PcfStatus::PCF);
    CHECK(r.rescalings[0].degenerate == (p == 2));
    CHECK(!r.dependence_matrix[0][1].dependent);
    CHECK(r.bound_audit.hypothesis_verified == (p == 5));
  }
  const RescalingReport good = audit_independent_count(M("z^2 + t"), {{F("z"), 1}, {F("z + t"), 1}});
  CHECK(good.good_reduction);
  CHECK(good.fixed_classes == 1);
  CHECK(good.single_fixed_class_pass);
  CHECK(good.dependence_matrix[0][1].str() == "Dependent(0)");
  const RescalingReport bad = audit_independent_count(M("z^2"), {{F("t*z"), 1}});
  CHECK(!bad.rescalings[0].error.empty());
  CHECK(!bad.warnings.empty());
}

TEST_CASE("audit of a degree-one family has bound zero") {
  const RescalingReport r = audit_independent_count(M("z + t"), {{F("z"), 1}});
  CHECK(r.bound_audit.limit_2d_minus_2 == 0);
  CHECK(r.bound_audit.count == 0);
  CHECK(r.rescalings[0].degenerate);
}

TEST_CASE("property: separable part composed with Frobenius reproduces the map") {
  gen::Gen g(71);
  for (int it = 0; it < 250; ++it) {
    const std::uint32_t p = g.coin() ? 2 : (g.coin() ? 3 : 5);
    const GroundField f = GroundField::prime(p);
    ResidueMap m = g.residue_map(f, 3);
    const int j = static_cast<int>(g.integer(0, 2));
    const BaseElem one(Scalar(f, 1));
    for (int i = 0; i < j; ++i)
      m = compose(m, ResidueMap::trusted(f, BasePoly::monomial(one, static_cast<int>(p)), BasePoly::constant(one)));
    const auto d = separable_decomposition(m);
    CHECK(d.frobenius_exponent >= j);
    CHECK(!wronskian(d.separable_part).is_zero());
    ResidueMap back = d.separable_part;
    for (int i = 0; i < d.frobenius_exponent; ++i)
      back = compose(back, ResidueMap::trusted(f, BasePoly::monomial(one, static_cast<int>(p)), BasePoly::constant(one)));
    CHECK(back == m);
  }
}

TEST_CASE("property: nontrivial degree is multiplicative") {
  gen::Gen g(72);
  for (int it = 0; it < 200; ++it) {
    const GroundField f = GroundField::prime(g.coin() ? 2 : 3);
    const BaseElem one(Scalar(f, 1));
    auto random_map = [&] {
      ResidueMap m = g.residue_map(f, 2);
      if (g.coin())
        m = compose(m, ResidueMap::trusted(f, BasePoly::monomial(one, static_cast<int>(f.p)), BasePoly::constant(one)));
      return m;
    };
    const ResidueMap a = random_map(), b = random_map();
    CHECK(nontrivial_degree(compose(a, b)) == nontrivial_degree(a) * nontrivial_degree(b));
  }
}

TEST_CASE("property: both PCF routes agree") {
  gen::Gen g(73);
  int open = 0;
  for (int it = 0; it < 200; ++it) {
    const GroundField f = g.field();
    const ResidueMap m = g.residue_map(f, 2);
    if (nontrivial_degree(m) < 1) continue;
    const int budget = static_cast<int>(g.integer(2, 12));
    OrbitCaps caps;
    caps.max_height = Q(24);
    caps.max_bits = 1024;
    const PcfVerdict a = pcf_via_critical_points(m, budget, caps);
    PcfVerdict b = pcf_via_critical_values(m, budget, caps);
    if (a.status != b.status) b = pcf_via_critical_values(m, budget + 1, caps);
    CHECK(a.status == b.status);
    CHECK_NOTHROW(pcf_at_nontrivial_crit(m, budget, caps));
    open += a.status == PcfStatus::NoCycleWithinBudget;
  }
  CHECK(open > 10);
}

namespace {

MovingFrame random_frame(gen::Gen& g, GroundField f, const std::vector<TypeIIPoint>& pool) {
  const TypeIIPoint& xi = pool[static_cast<std::size_t>(g.integer(0, static_cast<long>(pool.size()) - 1))];
  const MovingFrame base = frame_of_point(xi, f);
  while (true) {
    std::vector<Series> c(4);
    for (Series& x : c) x = Series(g.scalar(f)) + g.small_series(f).shifted(Q(1));
    if ((c[0] * c[3] - c[1] * c[2]).valuation() != Valuation(Q(0))) continue;
    const SeriesMap n = make_series_map(f, SeriesPoly(std::vector<Series>{c[1], c[0]}),
                                        SeriesPoly(std::vector<Series>{c[3], c[2]}));
    return MovingFrame(compose(base.map(), n));
  }
}

}  // namespace

TEST_CASE("property: frame equivalence is an equivalence relation") {
  gen::Gen g(74);
  for (int it = 0; it < 200; ++it) {
    const GroundField f = g.field();
    const std::vector<TypeIIPoint> pool{TypeIIPoint::gauss(), {Series(), Q(1)}, {Series::t_power(Q(1, 2)), Q(1)},
                                        {Series(1), Q(2)}};
    const MovingFrame a = random_frame(g, f, pool), b = random_frame(g, f, pool), c = random_frame(g, f, pool);
    CHECK(frames_equivalent(a, a));
    CHECK(frames_equivalent(a, b) == frames_equivalent(b, a));
    if (frames_equivalent(a, b) && frames_equivalent(b, c)) CHECK(frames_equivalent(a, c));
  }
}

TEST_CASE("property: dependence certificates match the direct reduction") {
  gen::Gen g(75);
  int dependent = 0;
  for (int it = 0; it < 200; ++it) {
    const GroundField f = g.field();
    const SeriesMap m = g.series_map(f, 2);
    const std::vector<TypeIIPoint> pool{TypeIIPoint::gauss(), {Series(), Q(1)}, {Series(), Q(2)}, {Series(1), Q(1)}};
    const MovingFrame a = random_frame(g, f, pool), b = random_frame(g, f, pool);
    DependenceVerdict v;
    try {
      v = dynamically_dependent(m, a, b, 3);
    } catch (const PrecisionExhausted&) {
      continue;
    }
    if (!v.dependent) continue;
    ++dependent;
    const MovingFrame& src = v.forward ? a : b;
    const MovingFrame& dst = v.forward ? b : a;
    const SeriesMap direct = compose(iterate(m, v.l), src.map());
    // dst^-1 o direct, reduced.
    const SeriesMap& d = dst.map();
    const SeriesMap inv = SeriesMap::trusted(f, SeriesPoly(std::vector<Series>{-d.num()[0], d.den()[0]}),
                                             SeriesPoly(std::vector<Series>{d.num()[1], -d.den()[1]}));
    const SeriesMap whole = compose(inv, direct);
    CHECK(*v.certificate == reduce_pair(f, whole.num(), whole.den()));
    CHECK(!v.certificate->is_constant());
  }
  CHECK(dependent >= 50);
}

TEST_CASE("example 2 period-2 limit is +1/(b^(3p) z^(3p^2))") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const ParseContext ctx = char_p(p);
    const std::string b = p == 2 ? "s" : "2";
    CHECK(frame_limit(M(ex2(p), ctx), F("t*z", ctx), 2) == R("1/(" + b + "^(3*p)*z^(3*p^2))", ctx));
  }
}
