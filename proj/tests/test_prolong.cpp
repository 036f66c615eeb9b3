#include <doctest.h>

#include <dg/prolong.hpp>
#include <dg/suites.hpp>

using namespace dg;

namespace {

RingPtr q() { return Ring::rationals(); }

Vec qv(std::initializer_list<long> xs) {
  Vec out;
  for (long x : xs) out.push_back(Ring::rationals()->from_int(x));
  return out;
}

}  // namespace

TEST_CASE("linear sets decide membership") {
  RingPtr r = q();
  auto whole = LinearSet::whole(r, 2);
  CHECK(whole->contains(qv({3, -4})));
  CHECK(whole->var_names() == std::vector<std::string>{"x1", "x2"});

  auto punctured = LinearSet::unit_denominators(r, 1, {parse_expr("x")});
  CHECK(punctured->contains(qv({2})));
  CHECK(!punctured->contains(qv({0})));
  CHECK(punctured->var_names() == std::vector<std::string>{"x"});

  auto listed = LinearSet::finite_list(r, 1, {qv({0}), qv({1}), qv({2})});
  CHECK(listed->contains(qv({1})));
  CHECK(!listed->contains(qv({5})));

  auto prod = LinearSet::product(punctured, listed);
  CHECK(prod->dim == 2);
  CHECK(prod->contains(qv({3, 2})));
  CHECK(!prod->contains(qv({0, 2})));
  CHECK(!prod->contains(qv({3, 7})));
}

TEST_CASE("arrow constructors validate the whole footprint") {
  RingPtr r = q();
  auto punctured = LinearSet::unit_denominators(r, 1, {parse_expr("x")});
  // x = 1, v = -1, t = 1 displaces onto the puncture.
  CHECK_THROWS_AS(make_arrow1(punctured, qv({1}), qv({-1}), r->one()), DomainError);
  CHECK_NOTHROW(make_arrow1(punctured, qv({1}), qv({1}), r->one()));
  // Wrong arity.
  CHECK_THROWS_AS(make_arrow1(punctured, qv({1, 2}), qv({1, 0}), r->one()), DomainError);
  // Second level uses the product scale: x + v*s*t must stay inside.
  CHECK_THROWS_AS(make_arrow2(punctured, qv({2}), qv({-1}), r->from_int(2), r->one()),
                  DomainError);
  CHECK_NOTHROW(make_arrow2(punctured, qv({2}), qv({-1}), r->from_int(2), r->from_int(0)));
}

TEST_CASE("star composition concatenates displacements at fixed scale") {
  RingPtr r = q();
  auto line = LinearSet::whole(r, 1);
  RingElem t = r->from_int(3);
  Arrow1 lo = make_arrow1(line, qv({1}), qv({2}), t);   // 1 -> 7
  Arrow1 hi = make_arrow1(line, qv({7}), qv({-1}), t);  // 7 -> 4
  REQUIRE(star_composable(hi, lo));
  Arrow1 c = compose_star(hi, lo);
  CHECK(arrow_eq(c, make_arrow1(line, qv({1}), qv({1}), t)));
  CHECK(base_eq(pi0(c), pi0(lo), *r));
  CHECK(base_eq(pi1(c), pi1(hi), *r));

  Arrow1 inv = invert_star(lo);
  CHECK(arrow_eq(compose_star(inv, lo), z_pi(line, pi0(lo))));
  CHECK(arrow_eq(compose_star(lo, inv), z_pi(line, pi1(lo))));

  // Different scales never compose, even with matching endpoints.
  Arrow1 other = make_arrow1(line, qv({7}), qv({-1}), r->one());
  CHECK(!star_composable(other, lo));
  CHECK_THROWS_AS(compose_star(other, lo), DomainError);
}

TEST_CASE("arrows live on their set instance") {
  RingPtr r = q();
  auto a_set = LinearSet::whole(r, 1);
  auto b_set = LinearSet::whole(r, 1);
  Arrow1 a = make_arrow1(a_set, qv({1}), qv({2}), r->one());
  Arrow1 b = make_arrow1(b_set, qv({1}), qv({2}), r->one());
  CHECK(arrow_eq(a, a));
  CHECK(!arrow_eq(a, b));  // same data, different space
}

TEST_CASE("second-level faces and projections") {
  RingPtr r = q();
  auto line = LinearSet::whole(r, 1);
  RingElem s = r->from_int(3), t = r->from_int(5);
  Arrow2 a = make_arrow2(line, qv({1}), qv({2}), s, t);

  Arrow1 d0 = partial0(a);
  CHECK(d0.v == qv({2}));
  CHECK(r->eq(d0.t, r->from_int(15)));  // (x, v; s*t)

  Arrow1 d1 = partial1(a);
  CHECK(d1.v == qv({6}));  // (x, v*s; t)
  CHECK(r->eq(d1.t, t));

  // The two faces bound the same displacement: x + v*(s*t) == x + (v*s)*t.
  CHECK(base_eq(pi1(d0), BasePoint1{qv({31}), r->from_int(15)}, *r));
  CHECK(base_eq(pi1(d1), BasePoint1{qv({31}), t}, *r));

  CHECK(base_eq(pi0(a), BasePoint2{qv({1}), s, t}, *r));
  CHECK(base_eq(pi1(a), BasePoint2{qv({31}), s, t}, *r));
}

TEST_CASE("bullet composition rescales") {
  RingPtr r = q();
  auto line = LinearSet::whole(r, 1);
  // inner = (1, 2; 3, 5), outer = (1, 6; 5, 1): outer.v = inner.v * inner.s
  // and inner.t = outer.s * outer.t.
  Arrow2 inner = make_arrow2(line, qv({1}), qv({2}), r->from_int(3), r->from_int(5));
  Arrow2 outer = make_arrow2(line, qv({1}), qv({6}), r->from_int(5), r->one());
  REQUIRE(bullet_composable(outer, inner));
  Arrow2 c = compose_bullet(outer, inner);
  CHECK(arrow_eq(c, make_arrow2(line, qv({1}), qv({2}), r->from_int(15), r->one())));
  // The bullet composite shares its 0-face with the inner cell and its 1-face
  // with the outer cell.
  CHECK(arrow_eq(partial0(c), partial0(inner)));
  CHECK(arrow_eq(partial1(c), partial1(outer)));

  CHECK(!bullet_composable(inner, outer));
  CHECK_THROWS_AS(compose_bullet(inner, outer), DomainError);
}

TEST_CASE("scaling moves a factor of the scale into the direction") {
  RingPtr r = q();
  auto line = LinearSet::whole(r, 1);
  RingElem s = r->from_int(4), t = r->from_int(7);
  Arrow1 a = make_arrow1(line, qv({2}), qv({3}), r->mul(s, t));
  Arrow1 b = scaling_phi(s, t, a);
  CHECK(arrow_eq(b, make_arrow1(line, qv({2}), qv({12}), t)));
  // Both present the same displacement.
  CHECK(r->eq(pi1(a).x[0], pi1(b).x[0]));
}

TEST_CASE("unit-scale trivialization is the pair groupoid") {
  RingPtr r = q();
  auto line = LinearSet::whole(r, 1);
  RingElem t = r->from_int(2);
  Arrow1 a = make_arrow1(line, qv({1}), qv({3}), t);  // 1 -> 7
  PairArrow p = phi_trivialize(a);
  CHECK(p.x == qv({1}));
  CHECK(p.y == qv({7}));
  CHECK(arrow_eq(phi_untrivialize(line, p), a));

  // Trivialization sends * to pair composition: target of lo = source of hi.
  Arrow1 hi = make_arrow1(line, qv({7}), qv({-2}), t);  // 7 -> 3
  PairArrow pc = phi_trivialize(compose_star(hi, a));
  CHECK(pc.x == qv({1}));
  CHECK(pc.y == qv({3}));

  // Scale zero has no trivialization.
  CHECK_THROWS_AS(phi_trivialize(make_arrow1(line, qv({1}), qv({3}), r->zero())), DomainError);
}

TEST_CASE("jointly-unit second-level trivialization") {
  RingPtr r = q();
  auto line = LinearSet::whole(r, 1);
  Arrow2 a = make_arrow2(line, qv({1}), qv({2}), r->from_int(3), r->from_int(5));
  QuadArrow qa = nonsingular_trivialize(a);
  CHECK(qa.x == qv({1}));
  CHECK(qa.y == qv({31}));
  CHECK(r->eq(qa.u, r->from_int(15)));
  CHECK(r->eq(qa.t, r->from_int(5)));
  CHECK(arrow_eq(nonsingular_untrivialize(line, qa), a));
  CHECK_THROWS_AS(nonsingular_trivialize(make_arrow2(line, qv({1}), qv({2}), r->zero(), r->one())),
                  DomainError);
}

TEST_CASE("pregroupoid bracket") {
  RingPtr r = q();
  auto line = LinearSet::whole(r, 1);
  RingElem t = r->from_int(2);
  // Shared source for a2, a1; shared target for a1, a0.
  Arrow1 a2 = make_arrow1(line, qv({1}), qv({5}), t);
  Arrow1 a1 = make_arrow1(line, qv({1}), qv({3}), t);
  Arrow1 a0 = make_arrow1(line, qv({3}), qv({2}), t);  // ends at 7 = end of a1
  Arrow1 b = pregroupoid_ternary(a2, a1, a0);
  CHECK(arrow_eq(b, make_arrow1(line, qv({3}), qv({4}), t)));  // v2 - v1 + v0
  CHECK(base_eq(pi0(b), pi0(a0), *r));
  CHECK(base_eq(pi1(b), pi1(a2), *r));

  // Undefined when the endpoint constraints fail.
  CHECK_THROWS_AS(pregroupoid_ternary(a2, a0, a1), DomainError);
}

TEST_CASE("product arrows split and rejoin") {
  RingPtr r = q();
  auto left = LinearSet::whole(r, 1);
  auto right = LinearSet::unit_denominators(r, 1, {parse_expr("x")});
  auto prod = LinearSet::product(left, right);
  Arrow1 joint = make_arrow1(prod, qv({1, 2}), qv({3, 4}), r->one());
  auto [la, ra] = product_split(joint);
  CHECK(la.x == qv({1}));
  CHECK(ra.x == qv({2}));
  CHECK(arrow_eq(product_join(prod, la, ra), joint));
}

TEST_CASE("first-level groupoid axioms hold exhaustively over Z/5") {
  auto set = LinearSet::whole(Ring::modn(5), 1);
  SuiteReport report = run_prolong1_suite(set);
  CHECK(report.pass());
  CHECK(report.seed == 0);  // small carrier: enumerated, not sampled
  CHECK(report.total_cases() > 0);
}

TEST_CASE("second-level double structure holds exhaustively over Z/3") {
  auto set = LinearSet::whole(Ring::modn(3), 1);
  SuiteReport report = run_prolong2_suite(set);
  CHECK(report.pass());
  bool saw_interchange = false;
  for (const CheckResult& c : report.checks)
    if (c.name == "interchange law") {
      saw_interchange = true;
      CHECK(c.cases > 0);
    }
  CHECK(saw_interchange);
}

TEST_CASE("pregroupoid suite over Z/5") {
  auto set = LinearSet::whole(Ring::modn(5), 1);
  CHECK(run_prolong_pregroupoid_suite(set).pass());
}

TEST_CASE("interpolation suite over Z/5") {
  auto set = LinearSet::whole(Ring::modn(5), 1);
  CHECK(run_interpolation_suite(set).pass());
}

TEST_CASE("nonsingular trivialization suite over Z/5") {
  auto set = LinearSet::whole(Ring::modn(5), 1);
  CHECK(run_nonsingular_trivialization_suite(set).pass());
}

TEST_CASE("scaled action suite over Z/5") {
  CHECK(run_scaled_action_suite(Ring::modn(5)).pass());
}

TEST_CASE("exhaustive suites insist on a finite carrier") {
  auto set = LinearSet::whole(Ring::rationals(), 1);
  CHECK_THROWS_AS(run_prolong1_suite(set), DomainError);
}
