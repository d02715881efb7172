#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "nadyn/errors.hpp"
#include "nadyn/parser.hpp"

using namespace nadyn;

namespace {

const ParseContext QQ{GroundField::rationals()};

}  // namespace

TEST_CASE("parse the intro map") {
  const SeriesMap f = parse_map("(z^3 + t)/z", QQ);
  CHECK(f.degree() == 3);
  CHECK(f.num() == SeriesPoly(std::vector<Series>{Series::t_power(Q(1)), Series(), Series(), Series(1)}));
  CHECK(f.den() == SeriesPoly(std::vector<Series>{Series(), Series(1)}));
  CHECK(f.str() == "(z^3 + t)/(z)");
}

TEST_CASE("parameter p in exponents") {
  ParseContext ctx(GroundField::prime(2));
  CHECK(parse_map("z^(2*p)", ctx).str() == "z^4");
  CHECK(parse_series("t^(1+2*p^2)", ParseContext(GroundField::prime(3))).str() == "t^19");
  CHECK(parse_series("t^(1 + 2*p*p)", ParseContext(GroundField::prime(3))) == Series::t_power(Q(19)));
}

TEST_CASE("syntax errors carry columns") {
  try {
    (void)parse_map("(z^2 + )/z", QQ);
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.column() == 8);
  }
  CHECK_THROWS_AS((void)parse_map("2z", QQ), SyntaxError);
  CHECK_THROWS_AS((void)parse_map("z^", QQ), SyntaxError);
  CHECK_THROWS_AS((void)parse_map("(z + 1", QQ), SyntaxError);
  try {
    (void)parse_map("z + w", QQ);
    FAIL("expected an unknown variable");
  } catch (const UnknownVariable& e) {
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS((void)parse_map("z^(2*p)", QQ), UnknownVariable);
  CHECK_THROWS_AS((void)parse_series("t^(1/128)", QQ), ExponentDenominatorOverflow);
}

TEST_CASE("series syntax") {
  const Series x = parse_series("t^(3/2) + 2*s*t^2 + O(t^64)", QQ);
  CHECK(x.str() == "t^(3/2) + 2*s*t^2 + O(t^64)");
  CHECK(parse_series("s^(1/2)*t", QQ).coefficient(Q(1)) == BaseElem::monomial(Scalar(1), Q(1, 2)));
  CHECK(parse_series("-t^(-1)", QQ) == -Series::t_power(Q(-1)));
  CHECK(parse_series("(1/2)/(1/2*s + 1)", QQ) == Series(BaseElem(1) / (BaseElem::s() + BaseElem(2))));
  CHECK(parse_point("inf", QQ).is_infinity());
}

TEST_CASE("coefficients land in the ground field") {
  const ParseContext F3(GroundField::prime(3));
  const SeriesMap f = parse_map("z^2 + 4*z", F3);
  CHECK(f.num()[1] == Series(Scalar(GroundField::prime(3), 1)));
  CHECK(parse_residue_map("(z^3 - s)^2", F3).str() == "z^6 + s*z^3 + s^2");
}

TEST_CASE("negative monomial maps round-trip") {
  const ResidueMap h = parse_residue_map("z^(-8)", QQ);
  CHECK(h.str() == "z^(-8)");
  CHECK(parse_residue_map(h.str(), QQ) == h);
}

TEST_CASE("property: printed series parse back to the same value") {
  gen::Gen g(31);
  for (int it = 0; it < 300; ++it) {
    const GroundField f = g.field();
    const ParseContext ctx(f);
    const Series x = g.series(f, g.coin()).in_field(f);
    CHECK(parse_series(x.str(), ctx) == x);
  }
}

TEST_CASE("property: printed maps parse back to the same value") {
  gen::Gen g(32);
  for (int it = 0; it < 200; ++it) {
    const GroundField f = g.field();
    const ParseContext ctx(f);
    const SeriesMap m = g.series_map(f, 3);
    INFO(m.str(), " -> ", parse_map(m.str(), ctx).str());
    CHECK(parse_map(m.str(), ctx) == m);
    const ResidueMap r = g.residue_map(f, 3);
    CHECK(parse_residue_map(r.str(), ctx) == r);
  }
}
