#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "nadyn/base_field.hpp"
#include "nadyn/errors.hpp"

using namespace nadyn;

namespace {

const GroundField F3 = GroundField::prime(3);

BasePoly bp(std::vector<BaseElem> c) { return BasePoly(std::move(c)); }

}  // namespace

TEST_CASE("ground fields") {
  CHECK(GroundField::rationals().characteristic() == 0);
  CHECK(GroundField::prime(7).characteristic() == 7);
  CHECK_THROWS_AS(GroundField::prime(9), std::invalid_argument);
  CHECK(Scalar(GroundField::prime(5), 3).inverse() == Scalar(GroundField::prime(5), 2));
  CHECK(Scalar(GroundField::prime(5), -1) == Scalar(GroundField::prime(5), 4));
  CHECK_THROWS_AS(Scalar(GroundField::prime(5), 0).inverse(), DivisionByZero);
}

TEST_CASE("base arithmetic examples") {
  const BaseElem s = BaseElem::s();
  CHECK((s + (-s)).is_zero());
  CHECK((s * s).inverse() == BaseElem::monomial(Scalar(1), Q(-2)));
  CHECK((s * s).inverse().str() == "s^(-2)");
  const BaseElem one3(Scalar(F3, 1)), two3(Scalar(F3, 2));
  const BaseElem prod = (s + one3) * (s + two3);
  CHECK(prod == s * s + two3);
  CHECK(prod.str() == "s^2 + 2");
  CHECK_THROWS_AS(BaseElem().inverse(), DivisionByZero);
}

TEST_CASE("canonical form is syntactic") {
  const BaseElem s = BaseElem::s();
  const BaseElem a = (s * s - BaseElem(1)) / (s - BaseElem(1));
  CHECK(a == s + BaseElem(1));
  const BaseElem h = BaseElem::monomial(Scalar(1), Q(1, 2));
  CHECK(h * h == s);
  CHECK((h * h).exponent_denominator() == 1);
  CHECK((BaseElem(1) / (s + BaseElem(2))).str() == "(1/2)/(1/2*s + 1)");
}

TEST_CASE("polynomial gcd over the base field") {
  const BaseElem s = BaseElem::s();
  const BasePoly z = bp({BaseElem(), BaseElem(1)});
  CHECK(poly_gcd_over_base(z * z - BasePoly::constant(s * s), z - BasePoly::constant(s)) == z - BasePoly::constant(s));
  CHECK(poly_gcd_over_base(z * z * z, z) == z);
  CHECK(poly_gcd_over_base(z * z + BasePoly::constant(BaseElem(1)), z + BasePoly::constant(BaseElem(1))) ==
        BasePoly::constant(BaseElem(1)));
  CHECK_THROWS_AS(poly_gcd_over_base(BasePoly(), BasePoly()), std::invalid_argument);
}

TEST_CASE("root extraction") {
  const BaseElem s3 = BaseElem::monomial(Scalar(F3, 1), Q(1));
  const BaseElem r = root_extract(s3, 3);
  CHECK(r == BaseElem::monomial(Scalar(F3, 1), Q(1, 3)));
  CHECK(r.pow(3) == s3);
  CHECK(root_extract(BaseElem(4), 2) == BaseElem(2));
  CHECK_THROWS_AS(root_extract(BaseElem::s() + BaseElem(1), 2), Unresolved);
  CHECK_THROWS_AS(root_extract(BaseElem(2), 2), Unresolved);
}

TEST_CASE("find_roots splits what the base field can represent") {
  const BaseElem s = BaseElem::s();
  const BasePoly z = bp({BaseElem(), BaseElem(1)});
  const BasePoly f = z * z * (z - BasePoly::constant(s)) * (z * z - BasePoly::constant(s));
  const RootSet rs = find_roots(f);
  CHECK(rs.resolved_count() == 5);
  CHECK(rs.unresolved_count() == 0);
  const RootSet irr = find_roots(z * z + BasePoly::constant(s + BaseElem(1)));
  CHECK(irr.resolved_count() == 0);
  CHECK(irr.unresolved_count() == 2);
  // Inseparable: z^3 - s over F3 is (z - s^(1/3))^3.
  const BaseElem s3 = BaseElem::monomial(Scalar(F3, 1), Q(1));
  const BasePoly z3 = bp({BaseElem(), BaseElem(Scalar(F3, 1))});
  const RootSet ins = find_roots(z3 * z3 * z3 - BasePoly::constant(s3));
  REQUIRE(ins.roots.size() == 1);
  CHECK(ins.roots[0].second == 3);
  CHECK(ins.roots[0].first == root_extract(s3, 3));
}

TEST_CASE("property: field axioms on random base elements") {
  gen::Gen g(20240611);
  for (int it = 0; it < 300; ++it) {
    const GroundField f = g.field();
    const BaseElem a = g.base(f), b = g.base(f), c = g.base(f);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
    if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
  }
}

TEST_CASE("property: gcd divides both inputs with coprime cofactors") {
  gen::Gen g(77);
  for (int it = 0; it < 200; ++it) {
    const GroundField f = g.field();
    auto rp = [&](int deg) {
      std::vector<BaseElem> c;
      for (int i = 0; i <= deg; ++i) c.push_back(g.laurent(f, 2, 1));
      c.back() = BaseElem(Scalar(f, 1));
      return BasePoly(std::move(c));
    };
    const BasePoly common = rp(static_cast<int>(g.integer(0, 2)));
    const BasePoly P = common * rp(static_cast<int>(g.integer(0, 2)));
    const BasePoly Q = common * rp(static_cast<int>(g.integer(0, 2)));
    const BasePoly G = poly_gcd_over_base(P, Q);
    CHECK(divmod(P, G).second.is_zero());
    CHECK(divmod(Q, G).second.is_zero());
    CHECK(poly_gcd_over_base(exact_div(P, G), exact_div(Q, G)).degree() == 0);
    CHECK(G.degree() >= common.degree());
  }
}

TEST_CASE("property: root_extract returns genuine roots") {
  gen::Gen g(5);
  for (int it = 0; it < 200; ++it) {
    const GroundField f = g.field();
    const BaseElem c = BaseElem::monomial(g.scalar(f, true), Q(g.integer(-4, 4), g.integer(1, 3)));
    const unsigned n = static_cast<unsigned>(g.integer(1, 5));
    std::optional<BaseElem> r;
    try {
      r = root_extract(c, n);
    } catch (const Unresolved&) {
    }
    if (r) CHECK(r->pow(n) == c);
  }
}
