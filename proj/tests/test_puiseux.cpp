#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "gen.hpp"
#include "nadyn/errors.hpp"
#include "nadyn/puiseux.hpp"

using namespace nadyn;

namespace {

Series t(const Q& e) { return Series::t_power(e); }
SeriesPoly sp(std::vector<Series> c) { return SeriesPoly(std::move(c)); }
const SeriesPoly Z = sp({Series(), Series(1)});
SeriesPoly lin(const Series& r) { return Z - SeriesPoly::constant(r); }

}  // namespace

TEST_CASE("series arithmetic examples") {
  CHECK((t(1) + t(2)) + (-t(1)) == t(2));
  CHECK(((t(1) + t(2)) - t(1)).is_exact());
  PrecisionContext ctx;
  ctx.t_order = Q(5);
  const Series inv = (Series(1) - t(1)).inverse(ctx);
  CHECK(inv.str() == "1 + t + t^2 + t^3 + t^4 + O(t^5)");
  const Series x = t(Q(3, 2)) * (Series(1) + Series::monomial(BaseElem::s(), Q(1)));
  const Series xi = x.inverse(PrecisionContext{});
  CHECK(xi.valuation() == Valuation(Q(-3, 2)));
  CHECK(xi.coefficient(Q(-1, 2)) == -BaseElem::s());
  const Series prod = x * xi;
  CHECK(prod.str() == "1 + O(t^64)");
  CHECK_THROWS_AS(Series().inverse(ctx), DivisionByZero);
  CHECK_THROWS_AS(Series::zero_to(Q(3)).inverse(ctx), PrecisionExhausted);
}

TEST_CASE("inverse precision loses twice the valuation") {
  const Series x = (t(2) + t(3)).truncated(Q(10));
  const Series xi = x.inverse(PrecisionContext{});
  REQUIRE(xi.precision());
  CHECK(*xi.precision() == Q(6));
}

TEST_CASE("exact division of polynomials in t stays exact") {
  const Series a = t(2) - Series(1);
  const Series b = t(1) - Series(1);
  const Series q = divide(a, b, PrecisionContext{});
  CHECK(q.is_exact());
  CHECK(q == t(1) + Series(1));
}

TEST_CASE("valuation examples") {
  CHECK((t(Q(3, 2)) + t(2)).valuation() == Valuation(Q(3, 2)));
  CHECK(Series().valuation().is_infinite());
  const Series st = Series::monomial(BaseElem::s(), Q(1, 2));
  CHECK((st - st + t(1)).valuation() == Valuation(Q(1)));
}

TEST_CASE("residue examples") {
  CHECK(Series(1) + t(1) != Series(1));
  CHECK((Series(1) + t(1)).residue() == BaseElem(1));
  CHECK(t(1).residue().is_zero());
  CHECK_THROWS_AS(t(-1).residue(), NegativeValuation);
  CHECK_THROWS_AS(Series::zero_to(Q(0)).residue(), PrecisionExhausted);
}

TEST_CASE("canonical strings") {
  const Series x = t(Q(3, 2)) + Series::monomial(BaseElem::s().times_int(2), Q(2));
  CHECK(x.truncated(Q(64)).str() == "t^(3/2) + 2*s*t^2 + O(t^64)");
  CHECK(Series().str() == "0");
  CHECK(Series::zero_to(Q(4)).str() == "O(t^4)");
  CHECK((Series(1) - t(1)).str() == "1 - t");
}

TEST_CASE("Newton polygon examples") {
  const SeriesPoly P = lin(t(1)) * lin(t(2));
  CHECK(P == sp({t(3), -(t(1) + t(2)), Series(1)}));
  CHECK(root_valuations(newton_polygon(P)) == std::vector<Valuation>{Q(1), Q(2)});
  CHECK(root_valuations(newton_polygon(Z * Z - SeriesPoly::constant(t(1)))) ==
        std::vector<Valuation>{Q(1, 2), Q(1, 2)});
  CHECK(root_valuations(newton_polygon(Z * Z * Z)) == std::vector<Valuation>(3, Valuation::infinity()));
  CHECK_THROWS_AS(newton_polygon(sp({Series::zero_to(Q(1)), Series(), Series(1)})), PrecisionExhausted);
}

TEST_CASE("disk zero counts") {
  const SeriesPoly P = lin(t(1)) * lin(t(2));
  CHECK(count_zeros_in_disk(P, Series(), Q(1)) == 2);
  CHECK(count_zeros_in_disk(P, Series(), Q(3, 2)) == 1);
  CHECK(count_zeros_in_disk(Z * Z - SeriesPoly::constant(t(1)), Series(), Q(1)) == 0);
  CHECK(count_zeros_in_disk(P, t(1), Q(2)) == 1);
}

TEST_CASE("property: valuation axioms") {
  gen::Gen g(11);
  for (int it = 0; it < 300; ++it) {
    const GroundField f = g.field();
    const Series x = g.series(f, true), y = g.series(f, true);
    CHECK((x * y).valuation() == x.valuation() + y.valuation());
    const Valuation vs = (x + y).valuation();
    CHECK(vs >= min(x.valuation(), y.valuation()));
    if (x.valuation() != y.valuation()) CHECK(vs == min(x.valuation(), y.valuation()));
  }
}

TEST_CASE("property: truncated arithmetic is consistent with exact arithmetic") {
  gen::Gen g(12);
  PrecisionContext ctx;
  ctx.t_order = Q(8);
  for (int it = 0; it < 200; ++it) {
    const GroundField f = g.field();
    const Series x = g.series(f, true, true, true), y = g.series(f, true, false, true);
    const Series prod = x * x.inverse(ctx);
    if (prod.precision())
      CHECK(prod == Series(1).truncated(*prod.precision()));
    else
      CHECK(prod.is_one());
    const Series q = divide(y, x, ctx);
    const Series back = q * x;
    if (back.precision())
      CHECK(back == y.truncated(*back.precision()));
    else
      CHECK(back == y);
  }
}

TEST_CASE("property: Gauss norm is multiplicative") {
  gen::Gen g(13);
  for (int it = 0; it < 200; ++it) {
    const GroundField f = g.field();
    const SeriesPoly P = g.series_poly(f, 3, true), R = g.series_poly(f, 3, true);
    CHECK(gauss_valuation(P * R) == gauss_valuation(P) + gauss_valuation(R));
  }
}

TEST_CASE("property: Newton polygon of a product is the union") {
  gen::Gen g(14);
  for (int it = 0; it < 200; ++it) {
    const GroundField f = g.field();
    const SeriesPoly P = g.series_poly(f, 3, true), R = g.series_poly(f, 3, true);
    if (P.degree() < 0 || R.degree() < 0) continue;
    std::vector<Valuation> u = root_valuations(newton_polygon(P));
    const std::vector<Valuation> b = root_valuations(newton_polygon(R));
    u.insert(u.end(), b.begin(), b.end());
    std::sort(u.begin(), u.end());
    CHECK(root_valuations(newton_polygon(P * R)) == u);
  }
}

TEST_CASE("property: disk counts agree with explicit roots") {
  gen::Gen g(15);
  for (int it = 0; it < 200; ++it) {
    const GroundField f = g.field();
    std::vector<Series> roots;
    SeriesPoly P = SeriesPoly::constant(Series(1));
    const long n = g.integer(1, 4);
    for (long i = 0; i < n; ++i) {
      Series r;
      for (long k = 0; k < 2; ++k) r += Series::monomial(BaseElem(g.scalar(f)), Q(g.integer(0, 4), g.integer(1, 2)));
      roots.push_back(r);
      P *= lin(r);
    }
    const Series center = roots[static_cast<std::size_t>(g.integer(0, n - 1))].head(Q(g.integer(0, 3)));
    const Q radius(g.integer(0, 5), g.integer(1, 2));
    int brute = 0;
    for (const Series& r : roots) brute += (r - center).valuation() >= Valuation(radius);
    CHECK(count_zeros_in_disk(P, center, radius) == brute);
  }
}
