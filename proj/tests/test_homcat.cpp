#include <doctest.h>

#include <dg/homcat.hpp>

#include "oracles.hpp"

using namespace dg;

namespace {

RingPtr z5() { return Ring::modn(5); }

Vec ev(const RingPtr& r, std::initializer_list<long> xs) {
  Vec out;
  for (long x : xs) out.push_back(r->from_int(x));
  return out;
}

// Endomorphisms of the line over Z/5 with constant base 2 and a factorizer
// a*v*(1 - T^4) that vanishes after multiplication by T (Fermat), so the
// difference identity holds even though the base map is constant. Both laws
// share one carrier instance so their images compose on the nose.
struct ShearPair {
  LinearSetPtr line;
  Law f, g;
};

ShearPair shear_pair() {
  ShearPair out;
  out.line = LinearSet::whole(z5(), 1);
  out.f.domain = out.line;
  out.f.codomain = out.line;
  out.f.base = {parse_expr("2")};
  out.f.factorizer = {parse_expr("v * (1 - T^4)")};
  out.f.kind = "polynomial";
  out.g = out.f;
  out.g.factorizer = {parse_expr("3 * v * (1 - T^4)")};
  return out;
}

}  // namespace

TEST_CASE("constant-base shears with nonzero factorizers are honest laws") {
  ShearPair p = shear_pair();
  Sampler sampler(7);
  CHECK(check_law_axioms(p.f, sampler).pass());
  SuiteReport rg = check_law_axioms(p.g, sampler);
  CHECK(rg.pass());
  CHECK(rg.seed == 0);  // Z/5 in one variable is enumerated, not sampled
}

TEST_CASE("hom elements built from laws act through apply1/apply2") {
  ShearPair p = shear_pair();
  RingPtr r = z5();
  HomElement F = hom_from_law(p.f);
  CHECK_FALSE(F.closure_backed());

  Arrow1 a = make_arrow1(p.line, ev(r, {1}), ev(r, {1}), r->from_int(2));
  Arrow1 fa = hom_apply1(F, a);
  // F(1,1,2) = 1 * (1 - 2^4) = 1 - 16 = 0 mod 5.
  CHECK(r->eq(fa.x[0], r->from_int(2)));
  CHECK(r->eq(fa.v[0], r->zero()));

  // Second level evaluates the factorizer at s*t: s=2, t=3 gives s*t=1 and
  // 1 - 1^4 = 0.
  Arrow2 c = make_arrow2(p.line, ev(r, {1}), ev(r, {1}), r->from_int(2), r->from_int(3));
  std::optional<Arrow2> fc = hom_apply2(F, c);
  REQUIRE(fc.has_value());
  CHECK(r->eq(fc->x[0], r->from_int(2)));
  CHECK(r->eq(fc->v[0], r->zero()));
  CHECK(r->eq(fc->s, r->from_int(2)));
  CHECK(r->eq(fc->t, r->from_int(3)));
}

TEST_CASE("shear images compose under star and the composite adds factorizers") {
  ShearPair p = shear_pair();
  Sampler sampler(13);
  HomElement F = hom_from_law(p.f), G = hom_from_law(p.g);
  REQUIRE(hom_composable_star(F, G, sampler));

  HomElement FG = hom_star(F, G, sampler);
  CHECK(FG.law.kind == "hom-star");
  CHECK_FALSE(FG.closure_backed());

  // Base comes from the inner element, factorizer is the pointwise sum.
  Fraction base = expr_to_fraction(FG.law.base[0], {"x"});
  CHECK(base == expr_to_fraction(parse_expr("2"), {"x"}));
  Fraction sum = expr_to_fraction(FG.law.factorizer[0], {"x", "v", "T"});
  CHECK(sum == expr_to_fraction(parse_expr("4 * v * (1 - T^4)"), {"x", "v", "T"}));
}

TEST_CASE("the pointwise hom structure checks pass for the shear pair") {
  ShearPair p = shear_pair();
  Sampler sampler(23);
  HomElement F = hom_from_law(p.f), G = hom_from_law(p.g);
  SuiteReport report = check_hom_star_structure(F, G, sampler);
  CHECK(report.pass());
  CHECK(report.seed == 0);  // exhaustive over the 125 arrows of Z/5
  REQUIRE(report.checks.size() == 5);
  CHECK(report.checks[0].name == "images compose under star everywhere");
  CHECK(report.checks[4].name == "composable endomorphism pairs commute");
  for (const CheckResult& c : report.checks) CHECK(c.cases == 125);
}

TEST_CASE("t = 0 slices of a star composite add like vector fields") {
  ShearPair p = shear_pair();
  RingPtr r = z5();
  Sampler sampler(29);
  HomElement F = hom_from_law(p.f), G = hom_from_law(p.g);
  Law fg = hom_star(F, G, sampler).law;
  for (long xi = 0; xi < 5; ++xi)
    for (long vi = 0; vi < 5; ++vi) {
      Vec x = ev(r, {xi}), v = ev(r, {vi});
      RingElem lhs = tangent(fg, x, v).second[0];
      RingElem rhs = r->add(tangent(p.f, x, v).second[0], tangent(p.g, x, v).second[0]);
      CHECK(r->eq(lhs, rhs));
    }
}

TEST_CASE("zero sections are right units for the star composition") {
  ShearPair p = shear_pair();
  RingPtr r = z5();
  Sampler sampler(31);
  HomElement F = hom_from_law(p.f);
  HomElement Z = hom_zero_section(F);
  Fraction zf = expr_to_fraction(Z.law.factorizer[0], {"x", "v", "T"});
  CHECK(zf == expr_to_fraction(parse_expr("0"), {"x", "v", "T"}));

  HomElement FZ = hom_star(F, Z, sampler);
  for (const Arrow1& a : enumerate_arrow1(p.line))
    CHECK(arrow_eq(hom_apply1(FZ, a), hom_apply1(F, a)));
  (void)r;
}

TEST_CASE("maps whose images never line up refuse to star-compose") {
  auto line = LinearSet::whole(z5(), 1);
  HomElement square = hom_from_law(polynomial_law(line, line, {parse_expr("x^2")}));
  HomElement cube = hom_from_law(polynomial_law(line, line, {parse_expr("x^3")}));
  Sampler sampler(37);
  CHECK_FALSE(hom_composable_star(square, cube, sampler));
  CHECK_THROWS_AS(hom_star(square, cube, sampler), DomainError);
}

TEST_CASE("parallel hom elements need equal carrier descriptions") {
  ShearPair p = shear_pair();
  auto qline = LinearSet::whole(Ring::rationals(), 1);
  HomElement F = hom_from_law(p.f);
  HomElement H = hom_from_law(polynomial_law(qline, qline, {parse_expr("x")}));
  Sampler sampler(41);
  CHECK_THROWS_AS(hom_star(F, H, sampler), DomainError);
  CHECK_THROWS_AS(hom_composable_star(F, H, sampler), DomainError);
}

TEST_CASE("bullet composites are closure-backed and live on the scale locus") {
  ShearPair p = shear_pair();
  RingPtr r = z5();
  Sampler sampler(43);
  HomElement Z = hom_zero_section(hom_from_law(p.f));
  HomElement ZZ = hom_bullet(Z, Z, sampler);
  CHECK(ZZ.closure_backed());

  // On the locus t = s*t the composite squares the scale coordinate.
  Arrow2 on = make_arrow2(p.line, ev(r, {1}), ev(r, {2}), r->from_int(3), r->zero());
  std::optional<Arrow2> img = hom_apply2(ZZ, on);
  REQUIRE(img.has_value());
  CHECK(r->eq(img->x[0], r->from_int(2)));
  CHECK(r->eq(img->v[0], r->zero()));
  CHECK(r->eq(img->s, r->from_int(4)));  // 3 * 3
  CHECK(r->eq(img->t, r->zero()));

  // Off the locus (s*t != t) the composite is undefined, not an error.
  Arrow2 off = make_arrow2(p.line, ev(r, {1}), ev(r, {2}), r->from_int(2), r->from_int(3));
  CHECK_FALSE(hom_apply2(ZZ, off).has_value());

  // Closure-backed elements have no first-level action and no star.
  Arrow1 a = make_arrow1(p.line, ev(r, {1}), ev(r, {1}), r->one());
  CHECK_THROWS_AS(hom_apply1(ZZ, a), DomainError);
  CHECK_THROWS_AS(hom_star(ZZ, ZZ, sampler), DomainError);
}

TEST_CASE("bullet composition rejects pairs whose images never compose") {
  ShearPair p = shear_pair();
  Sampler sampler(47);
  HomElement F = hom_from_law(p.f), G = hom_from_law(p.g);
  // At t = 0, s != 1 the images sit on the locus but their direction
  // components fail outer.v = inner.v * inner.s.
  CHECK_THROWS_AS(hom_bullet(F, G, sampler), DomainError);
}
