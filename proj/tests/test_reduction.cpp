#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "nadyn/errors.hpp"
#include "nadyn/parser.hpp"
#include "nadyn/reduction.hpp"

using namespace nadyn;

namespace {

const ParseContext QQ{GroundField::rationals()};

}  // namespace

TEST_CASE("reduction of the intro map") {
  const ReductionResult r = reduce_map(parse_map("(z^3 + t)/z", QQ));
  CHECK(r.H_str() == "X");
  CHECK(r.g_hat == parse_residue_map("z^2", QQ));
  CHECK(!r.good);
  CHECK(r.exceptional_set() == std::vector<std::string>{"0"});
}

TEST_CASE("reduction of the good family and the degree-dropping family") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const ParseContext ctx(GroundField::prime(p));
    const ReductionResult r1 = reduce_map(parse_map("(z^p - (s + t))*(z^p - s)", ctx));
    CHECK(r1.good);
    CHECK(r1.H_str() == "1");
    CHECK(r1.g_hat == parse_residue_map("(z^p - s)^2", ctx));
    const ReductionResult r3 = reduce_map(parse_map("z^(2*p) + t^(1 + 2*p^2)/z^p", ctx));
    CHECK(r3.H_str() == "X^" + std::to_string(p));
    CHECK(r3.g_hat == parse_residue_map("z^(2*p)", ctx));
    CHECK(r3.h_degree() + r3.g_hat.degree() == 3 * static_cast<int>(p));
  }
}

TEST_CASE("has_good_reduction examples") {
  CHECK(has_good_reduction(parse_map("(z^3 - (s + t))*(z^3 - s)", ParseContext(GroundField::prime(3)))));
  CHECK(!has_good_reduction(parse_map("(z^3 + t)/z", QQ)));
  const SeriesMap f = parse_map("z^2 + 1/t", QQ);
  CHECK(!has_good_reduction(f));
  CHECK(reduce_map(f).g_hat.degree() == 0);
  CHECK(reduce_map(f).H_str() == "Y^2");
}

TEST_CASE("pointwise limits") {
  const SeriesMap f = parse_map("(z^3 + t)/z", QQ);
  CHECK(same_point(pointwise_limit_at(f, ResiduePoint::affine(BaseElem(1))), ResiduePoint::affine(BaseElem(1))));
  CHECK(pointwise_limit_at(f, ResiduePoint::affine(BaseElem())).is_infinity());
  CHECK(evaluate(reduce_map(f).g_hat, ResiduePoint::affine(BaseElem())).x().is_zero());
  const ParseContext F3(GroundField::prime(3));
  const SeriesMap e1 = parse_map("(z^p - (s + t))*(z^p - s)", F3);
  const ResiduePoint v = pointwise_limit_at(e1, ResiduePoint::affine(BaseElem()));
  CHECK(v.x() == (BaseElem::s() * BaseElem::s()).in_field(F3.field));
}

TEST_CASE("composition law fails when the inner reduction is constant") {
  const SeriesMap phi = parse_map("z^2/t^2", QQ), psi = parse_map("t*z^2", QQ);
  const ResidueMap rc = reduce_map(compose(phi, psi)).g_hat;
  CHECK(rc == parse_residue_map("z^4", QQ));
  const ResidueMap rpsi = reduce_map(psi).g_hat;
  CHECK(rpsi.is_constant());
  CHECK(compose(reduce_map(phi).g_hat, rpsi) != rc);
}

namespace {

// rho of the pair (a, b) after normalization; nullopt when the residue pair collapses.
std::optional<ResidueMap> rho_pair(GroundField f, const SeriesPoly& a, const SeriesPoly& b) {
  auto [n, d] = normalize_pair(a, b);
  return reduce_pair(f, n, d);
}

BasePoly residues(const SeriesPoly& p) {
  return p.map([](const Series& c) { return c.residue(); });
}

// Maps whose coefficients are units or zero mod t, so that numerator and
// denominator residues stay nonzero.
SeriesMap non_collapsing_map(gen::Gen& g, GroundField f, int max_deg) {
  while (true) {
    std::vector<Series> a, b;
    const long da = g.integer(1, max_deg), db = g.integer(0, max_deg);
    auto coef = [&] { return Series(g.scalar(f)) + g.small_series(f).shifted(Q(1)); };
    for (long i = 0; i <= da; ++i) a.push_back(coef());
    for (long i = 0; i <= db; ++i) b.push_back(coef());
    try {
      const SeriesMap m = make_series_map(f, SeriesPoly(a), SeriesPoly(b));
      if (m.degree() < 1) continue;
      const SeriesMap n = normalize_map(m);
      if (residues(n.num()).is_zero() || residues(n.den()).is_zero()) continue;
      return n;
    } catch (const std::exception&) {
    }
  }
}

}  // namespace

TEST_CASE("property: reduction respects products, sums and compositions") {
  gen::Gen g(51);
  int prod = 0, sum = 0, comp = 0;
  for (int it = 0; it < 250; ++it) {
    const GroundField f = g.field();
    const SeriesMap a = non_collapsing_map(g, f, 2), b = non_collapsing_map(g, f, 2);
    const ResidueMap ra = reduce_map(a).g_hat, rb = reduce_map(b).g_hat;
    const BasePoly an = residues(a.num()), ad = residues(a.den()), bn = residues(b.num()), bd = residues(b.den());
    if (!ad.is_zero() && !bd.is_zero()) {
      if (!(an * bn).is_zero()) {
        const auto lhs = rho_pair(f, a.num() * b.num(), a.den() * b.den());
        CHECK(*lhs == make_residue_map(f, ra.num() * rb.num(), ra.den() * rb.den()));
        ++prod;
      }
      const BasePoly sn = an * bd + bn * ad;
      if (!sn.is_zero()) {
        const auto lhs = rho_pair(f, a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
        CHECK(*lhs == make_residue_map(f, ra.num() * rb.den() + rb.num() * ra.den(), ra.den() * rb.den()));
        ++sum;
      }
    }
    if (rb.degree() >= 1) {
      CHECK(reduce_map(compose(a, b)).g_hat == compose(ra, rb));
      ++comp;
    }
  }
  CHECK(prod >= 100);
  CHECK(sum >= 100);
  CHECK(comp >= 100);
}

TEST_CASE("property: pointwise limits agree with the reduced map off the exceptional set") {
  gen::Gen g(52);
  for (int it = 0; it < 200; ++it) {
    const GroundField f = g.integer(0, 1) == 0 ? GroundField::rationals() : GroundField::prime(101);
    const SeriesMap m = g.series_map(f, 3);
    const ReductionResult r = reduce_map(m);
    if (r.g_hat.is_constant()) continue;
    int sampled = 0;
    for (int k = 0; k < 200 && sampled < 20; ++k) {
      const ResiduePoint z = ResiduePoint::affine(BaseElem(g.scalar(f)));
      if (!r.h.is_zero() && r.h.degree() > 0 && r.h.eval(z.x()).is_zero()) continue;
      CHECK(same_point(pointwise_limit_at(m, z), evaluate(r.g_hat, z)));
      ++sampled;
    }
  }
}
