#include <doctest.h>

#include <set>

#include <dg/json_io.hpp>
#include <dg/manifold.hpp>

#include "support.hpp"

using namespace dg;

namespace {

RingPtr q() { return Ring::rationals(); }

Vec qv(const RingPtr& r, const std::string& text) { return Vec{r->parse(text)}; }

// The projective line with the reciprocal transition replaced by 2/x in one
// direction only, so round trips through the overlap land at 4x instead of x.
GluingPtr skewed_projective_line(const RingPtr& ring) {
  GluingData g;
  g.ring = ring;
  g.dim = 1;
  g.chart = {LinearSet::whole(ring, 1), LinearSet::whole(ring, 1)};
  g.overlap.assign(2, std::vector<LinearSetPtr>(2));
  g.transition.assign(2, std::vector<Law>(2));
  g.overlap[0][1] = LinearSet::unit_denominators(ring, 1, {make_var("x")});
  g.overlap[1][0] = LinearSet::unit_denominators(ring, 1, {make_var("x")});
  g.transition[0][1] = rational_law(ring, 1, 1, {parse_expr("2 / x")}, {make_var("x")});
  g.transition[1][0] = rational_law(ring, 1, 1, {parse_expr("1 / x")}, {make_var("x")});
  return seal_gluing(std::move(g));
}

}  // namespace

TEST_CASE("points of the projective line are identified through the reciprocal") {
  GluingPtr g = projective_line(q());
  RingPtr r = g->ring;
  ManifoldPoint two = make_point(g, 0, qv(r, "2"));
  ManifoldPoint half = make_point(g, 1, qv(r, "1/2"));
  CHECK(same_point(g, two, half));
  CHECK(same_point(g, half, two));
  CHECK_FALSE(same_point(g, two, make_point(g, 1, qv(r, "2"))));
  // The origin of either chart misses the overlap entirely.
  CHECK_FALSE(same_point(g, make_point(g, 0, qv(r, "0")), make_point(g, 1, qv(r, "0"))));
}

TEST_CASE("point transport applies the transition and guards the overlap") {
  GluingPtr g = projective_line(q());
  RingPtr r = g->ring;
  ManifoldPoint two = make_point(g, 0, qv(r, "2"));
  ManifoldPoint moved = transport_point(g, two, 1);
  CHECK(moved.chart == 1);
  CHECK(r->eq(moved.x[0], r->parse("1/2")));
  // Transport to the chart a point already lives in is the identity.
  ManifoldPoint still = transport_point(g, two, 0);
  CHECK(still.chart == 0);
  CHECK(r->eq(still.x[0], two.x[0]));
  // 0 represents a point that chart 2 cannot see.
  CHECK_THROWS_AS(transport_point(g, make_point(g, 0, qv(r, "0")), 1), DomainError);
}

TEST_CASE("canonical representatives pick the lowest admissible chart") {
  GluingPtr g = projective_line(q());
  RingPtr r = g->ring;
  ManifoldPoint p = canonicalize(g, make_point(g, 1, qv(r, "1/2")));
  CHECK(p.chart == 0);
  CHECK(r->eq(p.x[0], r->from_int(2)));
  // The point at infinity stays in the second chart.
  ManifoldPoint inf = canonicalize(g, make_point(g, 1, qv(r, "0")));
  CHECK(inf.chart == 1);
  CHECK(r->eq(inf.x[0], r->zero()));
}

TEST_CASE("the projective line over Z/5 has exactly six points") {
  GluingPtr g = projective_line(Ring::modn(5));
  std::set<std::string> seen;
  for (size_t chart = 0; chart < 2; ++chart)
    for (const Vec& x : enumerate_points(g->chart[chart]))
      seen.insert(to_string(*g, canonicalize(g, ManifoldPoint{chart, x})));
  CHECK(seen.size() == 6);
}

TEST_CASE("arrow transport pushes the factorizer of the transition") {
  GluingPtr g = projective_line(q());
  RingPtr r = g->ring;
  // (1, 1; 1) runs from 1 to 2; in the reciprocal chart it runs from 1 to 1/2
  // with direction (1/(x+vt) - 1/x)/t = -1/2.
  ManifoldArrow a = make_manifold_arrow(g, 0, qv(r, "1"), qv(r, "1"), r->one());
  ManifoldArrow b = transport_arrow(g, a, 1);
  CHECK(b.chart == 1);
  CHECK(r->eq(b.arrow.x[0], r->one()));
  CHECK(r->eq(b.arrow.v[0], r->parse("-1/2")));
  CHECK(r->eq(b.arrow.t, r->one()));
  CHECK(same_arrow(g, a, b));

  // At t = 0 transport is the tangent map of 1/x: v -> -v/x^2.
  ManifoldArrow tg = make_manifold_arrow(g, 0, qv(r, "3"), qv(r, "1"), r->zero());
  ManifoldArrow tm = transport_arrow(g, tg, 1);
  CHECK(r->eq(tm.arrow.x[0], r->parse("1/3")));
  CHECK(r->eq(tm.arrow.v[0], r->parse("-1/9")));

  // An arrow whose footprint touches 0 cannot cross.
  ManifoldArrow stuck = make_manifold_arrow(g, 0, qv(r, "1"), qv(r, "-1"), r->one());
  CHECK_THROWS_AS(transport_arrow(g, stuck, 1), DomainError);
  CHECK_FALSE(same_arrow(g, a, stuck));
}

TEST_CASE("arrow composition works through any chart that holds both footprints") {
  GluingPtr g = projective_line(q());
  RingPtr r = g->ring;
  ManifoldArrow a = make_manifold_arrow(g, 0, qv(r, "1"), qv(r, "1"), r->one());
  ManifoldArrow b = make_manifold_arrow(g, 0, qv(r, "2"), qv(r, "3"), r->one());
  ManifoldArrow ab = m1_compose(g, a, b);
  CHECK(ab.chart == 0);
  CHECK(r->eq(ab.arrow.x[0], r->one()));
  CHECK(r->eq(ab.arrow.v[0], r->from_int(4)));
  CHECK(same_point(g, m1_source(g, ab), m1_source(g, a)));
  CHECK(same_point(g, m1_target(g, ab), m1_target(g, b)));

  // Handing the second arrow over in the other chart changes nothing.
  ManifoldArrow b1 = transport_arrow(g, b, 1);
  CHECK(same_arrow(g, ab, m1_compose(g, a, b1)));

  // Mismatched parameters and arrows that do not meet are rejected.
  CHECK_THROWS_AS(m1_compose(g, a, make_manifold_arrow(g, 0, qv(r, "2"), qv(r, "3"), r->zero())),
                  DomainError);
  CHECK_THROWS_AS(m1_compose(g, a, make_manifold_arrow(g, 0, qv(r, "3"), qv(r, "1"), r->one())),
                  DomainError);
}

TEST_CASE("meeting arrows without a shared chart are not handy") {
  GluingPtr g = projective_line(q());
  RingPtr r = g->ring;
  // a runs 0 -> 1 in the first chart and cannot leave it; b runs 1 -> infinity
  // in the second chart and cannot leave that one. They meet at 1.
  ManifoldArrow a = make_manifold_arrow(g, 0, qv(r, "0"), qv(r, "1"), r->one());
  ManifoldArrow b = make_manifold_arrow(g, 1, qv(r, "1"), qv(r, "-1"), r->one());
  CHECK(same_point(g, ManifoldPoint{1, pi0(b.arrow).x}, ManifoldPoint{0, pi1(a.arrow).x}));
  try {
    m1_compose(g, a, b);
    FAIL("composition should not find a common chart");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("not handy") != std::string::npos);
  }
}

TEST_CASE("second-level cells compose within a single chart only") {
  GluingPtr g = projective_line(q());
  RingPtr r = g->ring;
  ManifoldCell inner = make_manifold_cell(g, 0, qv(r, "1"), qv(r, "2"), r->from_int(3),
                                          r->from_int(5));
  ManifoldCell outer = make_manifold_cell(g, 0, qv(r, "1"), qv(r, "6"), r->from_int(5),
                                          r->one());
  ManifoldCell c = m2_compose_local(g, outer, inner);
  CHECK(c.chart == 0);
  CHECK(r->eq(c.cell.v[0], r->from_int(2)));
  CHECK(r->eq(c.cell.s, r->from_int(15)));
  CHECK(r->eq(c.cell.t, r->one()));
  ManifoldCell other = make_manifold_cell(g, 1, qv(r, "1"), qv(r, "2"), r->from_int(3),
                                          r->from_int(5));
  CHECK_THROWS_AS(m2_compose_local(g, outer, other), DomainError);
}

TEST_CASE("gluing validation passes for the projective line") {
  Sampler sampler(19);
  SuiteReport report = validate_gluing(projective_line(q()), sampler);
  CHECK(report.pass());
  CHECK(report.seed != 0);  // rational charts are sampled
  const CheckResult* cocycle = nullptr;
  for (const CheckResult& c : report.checks)
    if (c.name == "cocycle relations hold on triple overlaps") cocycle = &c;
  REQUIRE(cocycle != nullptr);
  CHECK(cocycle->cases > 0);
  CHECK(cocycle->failures == 0);

  // Over Z/5 the same data is enumerated instead.
  Sampler s2(19);
  SuiteReport finite = validate_gluing(projective_line(Ring::modn(5)), s2);
  CHECK(finite.pass());
  CHECK(finite.seed == 0);
}

TEST_CASE("a skewed transition breaks the cocycle relation") {
  Sampler sampler(19);
  SuiteReport report = validate_gluing(skewed_projective_line(q()), sampler);
  CHECK_FALSE(report.pass());
  for (const CheckResult& c : report.checks)
    if (c.name == "cocycle relations hold on triple overlaps") {
      CHECK(c.failures > 0);
      REQUIRE(!c.counterexamples.empty());
    }
}

TEST_CASE("gluing files load and validate like built structures") {
  Sampler sampler(19);
  GluingPtr good = gluing_from_json(load_json_file(support::fixture_path("projline.json")));
  CHECK(good->charts() == 2);
  CHECK(validate_gluing(good, sampler).pass());

  GluingPtr bad = gluing_from_json(load_json_file(support::fixture_path("broken_gluing.json")));
  Sampler s2(19);
  CHECK_FALSE(validate_gluing(bad, s2).pass());
}

TEST_CASE("gluing data must declare overlaps and transitions coherently") {
  RingPtr r = q();
  GluingData g;
  g.ring = r;
  g.dim = 1;
  g.chart = {LinearSet::whole(r, 1), LinearSet::whole(r, 1)};
  g.overlap.assign(2, std::vector<LinearSetPtr>(2));
  g.transition.assign(2, std::vector<Law>(2));
  g.overlap[0][1] = LinearSet::unit_denominators(r, 1, {make_var("x")});
  // Missing overlap[1][0] and both transitions.
  CHECK_THROWS_AS(seal_gluing(g), DomainError);
  g.transition[1][0] = rational_law(r, 1, 1, {parse_expr("1 / x")}, {make_var("x")});
  CHECK_THROWS_AS(seal_gluing(g), DomainError);  // still one-sided
  g.overlap[1][0] = LinearSet::unit_denominators(r, 1, {make_var("x")});
  g.transition[0][1] = rational_law(r, 1, 1, {parse_expr("1 / x")}, {make_var("x")});
  CHECK(seal_gluing(g) != nullptr);
}

TEST_CASE("a single squaring piece induces its mates across the charts") {
  GluingPtr g = projective_line(q());
  RingPtr r = g->ring;
  Law sq = polynomial_law(g->chart[0], g->chart[0], {parse_expr("x^2")});
  ManifoldLaw ml = make_manifold_law(g, g, {{sq, std::nullopt}, {std::nullopt, std::nullopt}});
  REQUIRE(ml.piece[1][1].has_value());
  // Conjugating squaring with the reciprocal gives squaring back — on the
  // punctured overlap where the conjugation is defined: the degree two
  // self-map looks the same from both ends of the line.
  Sampler agree(53);
  auto punctured = LinearSet::unit_denominators(r, 1, {make_var("x")});
  CHECK(laws_agree_pointwise(*ml.piece[1][1],
                             law_on_domain(punctured, g->chart[1], {parse_expr("x^2")}),
                             agree));
  REQUIRE(ml.piece[0][1].has_value());
  REQUIRE(ml.piece[1][0].has_value());

  ManifoldArrow a = make_manifold_arrow(g, 0, qv(r, "3"), qv(r, "1"), r->zero());
  ManifoldArrow image = manifold_apply1(ml, a);
  CHECK(image.chart == 0);
  CHECK(r->eq(image.arrow.x[0], r->from_int(9)));
  CHECK(r->eq(image.arrow.v[0], r->from_int(6)));  // tangent 2x*v at x=3

  Sampler sampler(59);
  SuiteReport report = check_manifold_law(ml, sampler);
  CHECK(report.pass());
}

TEST_CASE("incompatible pieces across charts are detected") {
  GluingPtr g = projective_line(q());
  Law sq = polynomial_law(g->chart[0], g->chart[0], {parse_expr("x^2")});
  Law cube = polynomial_law(g->chart[1], g->chart[1], {parse_expr("x^3")});
  ManifoldLaw ml = make_manifold_law(g, g, {{sq, std::nullopt}, {std::nullopt, cube}});
  Sampler sampler(61);
  SuiteReport report = check_manifold_law(ml, sampler);
  CHECK_FALSE(report.pass());
  for (const CheckResult& c : report.checks)
    if (c.name == "pieces agree across the overlaps") CHECK(c.failures > 0);
}
