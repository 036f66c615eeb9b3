#include <doctest.h>

#include <dg/checker.hpp>
#include <dg/prolong.hpp>
#include <dg/sampler.hpp>
#include <dg/suites.hpp>

using namespace dg;

namespace {

// ---- a hand-rolled finite model: arrows (src -> dst) on {0..n-1} -------------

struct Edge {
  int src, dst;
};

GroupoidSpec<Edge, int> pair_groupoid(int n) {
  GroupoidSpec<Edge, int> g;
  g.name = "pair groupoid";
  for (int i = 0; i < n; ++i) {
    g.bases.push_back(i);
    for (int j = 0; j < n; ++j) g.morphisms.push_back({i, j});
  }
  g.source = [](const Edge& e) { return e.src; };
  g.target = [](const Edge& e) { return e.dst; };
  g.unit = [](int b) { return Edge{b, b}; };
  g.compose = [](const Edge& hi, const Edge& lo) { return Edge{lo.src, hi.dst}; };
  g.invert = [](const Edge& e) { return std::optional<Edge>(Edge{e.dst, e.src}); };
  g.eq = [](const Edge& a, const Edge& b) { return a.src == b.src && a.dst == b.dst; };
  g.base_eq = [](int a, int b) { return a == b; };
  g.show = [](const Edge& e) {
    return std::to_string(e.src) + "->" + std::to_string(e.dst);
  };
  g.show_base = [](int b) { return std::to_string(b); };
  return g;
}

// The standard double wiring of second-level arrows over a finite set; tests
// corrupt individual fields to watch the checker catch the damage.
DoubleSpec<Arrow2, Arrow1, BasePoint2, BasePoint1> standard_double(const LinearSetPtr& set) {
  RingPtr rp = set->ring;
  DoubleSpec<Arrow2, Arrow1, BasePoint2, BasePoint1> d;
  d.name = "double structure on " + set->describe();
  d.cells = enumerate_arrow2(set);
  d.edges10 = enumerate_arrow1(set);
  d.edges01 = enumerate_base2(set);
  d.points = enumerate_base1(set);

  d.pi0 = [](const Arrow2& a) { return pi0(a); };
  d.pi1 = [](const Arrow2& a) { return pi1(a); };
  d.pi0_low = [](const Arrow1& a) { return pi0(a); };
  d.pi1_low = [](const Arrow1& a) { return pi1(a); };
  d.z_pi = [set](const BasePoint2& b) { return z_pi(set, b); };
  d.z_pi_low = [set](const BasePoint1& b) { return z_pi(set, b); };

  d.d0 = [](const Arrow2& a) { return partial0(a); };
  d.d1 = [](const Arrow2& a) { return partial1(a); };
  d.d0_low = [rp](const BasePoint2& b) { return partial0(b, *rp); };
  d.d1_low = [](const BasePoint2& b) { return partial1(b); };
  d.z_d = [](const Arrow1& a) { return z_partial(a); };
  d.z_d_low = [rp](const BasePoint1& b) { return z_partial(b, *rp); };

  d.star = [](const Arrow2& hi, const Arrow2& lo) { return compose_star(hi, lo); };
  d.star_low = [](const Arrow1& hi, const Arrow1& lo) { return compose_star(hi, lo); };
  d.bullet = [](const Arrow2& outer, const Arrow2& inner) {
    return compose_bullet(outer, inner);
  };
  d.bullet_low = [rp](const BasePoint2& outer, const BasePoint2& inner) {
    return compose_bullet_base(outer, inner, *rp);
  };
  d.star_invert = [](const Arrow2& a) { return invert_star(a); };
  d.star_invert_low = [](const Arrow1& a) { return invert_star(a); };

  d.eq11 = [](const Arrow2& a, const Arrow2& b) { return arrow_eq(a, b); };
  d.eq10 = [](const Arrow1& a, const Arrow1& b) { return arrow_eq(a, b); };
  d.eq01 = [rp](const BasePoint2& a, const BasePoint2& b) { return base_eq(a, b, *rp); };
  d.eq00 = [rp](const BasePoint1& a, const BasePoint1& b) { return base_eq(a, b, *rp); };
  d.show11 = [](const Arrow2& a) { return to_string(a); };
  d.show10 = [](const Arrow1& a) { return to_string(a); };
  d.show01 = [rp](const BasePoint2& b) { return to_string(b, *rp); };
  d.show00 = [rp](const BasePoint1& b) { return to_string(b, *rp); };
  return d;
}

// The transpose swaps the two composition directions wholesale. It is again a
// double structure (without the star-inversion, which belongs to the other
// orientation), so the generic suite must accept it.
DoubleSpec<Arrow2, BasePoint2, Arrow1, BasePoint1> transposed_double(const LinearSetPtr& set) {
  RingPtr rp = set->ring;
  DoubleSpec<Arrow2, BasePoint2, Arrow1, BasePoint1> d;
  d.name = "transposed double structure on " + set->describe();
  d.cells = enumerate_arrow2(set);
  d.edges10 = enumerate_base2(set);
  d.edges01 = enumerate_arrow1(set);
  d.points = enumerate_base1(set);

  d.pi0 = [](const Arrow2& a) { return partial0(a); };
  d.pi1 = [](const Arrow2& a) { return partial1(a); };
  d.pi0_low = [rp](const BasePoint2& b) { return partial0(b, *rp); };
  d.pi1_low = [](const BasePoint2& b) { return partial1(b); };
  d.z_pi = [](const Arrow1& a) { return z_partial(a); };
  d.z_pi_low = [rp](const BasePoint1& b) { return z_partial(b, *rp); };

  d.d0 = [](const Arrow2& a) { return pi0(a); };
  d.d1 = [](const Arrow2& a) { return pi1(a); };
  d.d0_low = [](const Arrow1& a) { return pi0(a); };
  d.d1_low = [](const Arrow1& a) { return pi1(a); };
  d.z_d = [set](const BasePoint2& b) { return z_pi(set, b); };
  d.z_d_low = [set](const BasePoint1& b) { return z_pi(set, b); };

  d.star = [](const Arrow2& hi, const Arrow2& lo) { return compose_bullet(hi, lo); };
  d.star_low = [rp](const BasePoint2& hi, const BasePoint2& lo) {
    return compose_bullet_base(hi, lo, *rp);
  };
  d.bullet = [](const Arrow2& outer, const Arrow2& inner) {
    return compose_star(outer, inner);
  };
  d.bullet_low = [](const Arrow1& outer, const Arrow1& inner) {
    return compose_star(outer, inner);
  };
  d.star_invert = nullptr;      // bullet inverses need a unit scale: not total
  d.star_invert_low = nullptr;

  d.eq11 = [](const Arrow2& a, const Arrow2& b) { return arrow_eq(a, b); };
  d.eq10 = [rp](const BasePoint2& a, const BasePoint2& b) { return base_eq(a, b, *rp); };
  d.eq01 = [](const Arrow1& a, const Arrow1& b) { return arrow_eq(a, b); };
  d.eq00 = [rp](const BasePoint1& a, const BasePoint1& b) { return base_eq(a, b, *rp); };
  d.show11 = [](const Arrow2& a) { return to_string(a); };
  d.show10 = [rp](const BasePoint2& b) { return to_string(b, *rp); };
  d.show01 = [](const Arrow1& a) { return to_string(a); };
  d.show00 = [rp](const BasePoint1& b) { return to_string(b, *rp); };
  return d;
}

}  // namespace

TEST_CASE("the pair groupoid of a three-element set passes") {
  SuiteReport report = run_groupoid_suite(pair_groupoid(3));
  CHECK(report.pass());
  // 3 units, 9 morphisms, 27 composable pairs, 81 composable triples.
  for (const CheckResult& c : report.checks) {
    if (c.name == "unit arrows sit at their object") CHECK(c.cases == 3);
    if (c.name == "left and right unit laws") CHECK(c.cases == 9);
    if (c.name == "composite endpoints") CHECK(c.cases == 27);
    if (c.name == "associativity on composable triples") CHECK(c.cases == 81);
  }
}

TEST_CASE("a displaced unit is caught with counterexamples") {
  GroupoidSpec<Edge, int> g = pair_groupoid(3);
  g.unit = [](int b) { return Edge{b, (b + 1) % 3}; };
  SuiteReport report = run_groupoid_suite(g);
  CHECK(!report.pass());
  bool saw = false;
  for (const CheckResult& c : report.checks) {
    if (c.name == "unit arrows sit at their object") {
      saw = true;
      CHECK(c.failures == 3);
      CHECK(c.counterexamples.size() == 3);
    }
  }
  CHECK(saw);
}

TEST_CASE("counterexamples are capped") {
  GroupoidSpec<Edge, int> g = pair_groupoid(5);
  g.compose = [](const Edge& hi, const Edge& lo) { return Edge{lo.src, hi.src}; };  // wrong
  SuiteReport report = run_groupoid_suite(g);
  CHECK(!report.pass());
  for (const CheckResult& c : report.checks) {
    CHECK(c.counterexamples.size() <= kMaxCounterexamples);
    if (c.name == "composite endpoints") CHECK(c.failures > kMaxCounterexamples);
  }
}

TEST_CASE("the standard double wiring passes over Z/3") {
  auto set = LinearSet::whole(Ring::modn(3), 1);
  SuiteReport report = run_doublecat_suite(standard_double(set));
  CHECK(report.pass());
  CHECK(report.total_cases() > 0);
}

TEST_CASE("the transposed double structure also passes") {
  auto set = LinearSet::whole(Ring::modn(3), 1);
  SuiteReport report = run_doublecat_suite(transposed_double(set));
  CHECK(report.pass());
  bool saw_interchange = false;
  for (const CheckResult& c : report.checks)
    if (c.name == "interchange law" && c.cases > 0) saw_interchange = true;
  CHECK(saw_interchange);
}

TEST_CASE("an additive rescaling composition breaks the interchange law") {
  auto set = LinearSet::whole(Ring::modn(3), 1);
  RingPtr rp = set->ring;
  auto d = standard_double(set);
  // Corrupt •: concatenate cells by *adding* the first scales instead of
  // multiplying them. The corruption is consistent with its own projections
  // (the low-level composition adds too), so only genuine axioms can object.
  d.bullet = [set, rp](const Arrow2& outer, const Arrow2& inner) {
    return make_arrow2(set, inner.x, inner.v, rp->add(inner.s, outer.s), outer.t);
  };
  d.bullet_low = [rp](const BasePoint2& outer, const BasePoint2& inner) {
    return BasePoint2{inner.x, rp->add(inner.s, outer.s), outer.t};
  };
  SuiteReport report = run_doublecat_suite(d);
  CHECK(!report.pass());
  bool interchange_failed = false;
  for (const CheckResult& c : report.checks)
    if (c.name == "interchange law" && c.failures > 0) interchange_failed = true;
  CHECK(interchange_failed);
}

TEST_CASE("pregroupoid of pairs: bracket glues along matching coordinates") {
  // Morphisms are pairs (x, y) in {0,1,2} x {0,1}; the bracket
  // [(x,y), (u,y), (u,v)] = (x,v) is total on key-matching triples.
  struct P {
    int x, y;
  };
  PregroupoidSpec<P> spec;
  spec.name = "pair pregroupoid";
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 2; ++y) spec.morphisms.push_back({x, y});
  spec.a_key = [](const P& p) { return std::to_string(p.y); };
  spec.b_key = [](const P& p) { return std::to_string(p.x); };
  spec.ternary = [](const P& p2, const P& p1, const P& p0) {
    (void)p1;
    return P{p2.x, p0.y};
  };
  spec.eq = [](const P& a, const P& b) { return a.x == b.x && a.y == b.y; };
  spec.show = [](const P& p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
  };
  SuiteReport report = run_pregroupoid_suite(spec);
  CHECK(report.pass());
  CHECK(report.total_cases() > 0);
}

TEST_CASE("a bracket that ignores its outer arguments is caught") {
  struct P {
    int x, y;
  };
  PregroupoidSpec<P> spec;
  spec.name = "broken pair pregroupoid";
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 2; ++y) spec.morphisms.push_back({x, y});
  spec.a_key = [](const P& p) { return std::to_string(p.y); };
  spec.b_key = [](const P& p) { return std::to_string(p.x); };
  spec.ternary = [](const P&, const P& p1, const P&) { return p1; };
  spec.eq = [](const P& a, const P& b) { return a.x == b.x && a.y == b.y; };
  spec.show = [](const P& p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
  };
  CHECK(!run_pregroupoid_suite(spec).pass());
}

TEST_CASE("suite reports aggregate pass/fail") {
  SuiteReport r;
  r.suite = "demo";
  r.checks.push_back({"a", 10, 0, {}});
  r.checks.push_back({"b", 5, 0, {}});
  CHECK(r.pass());
  CHECK(r.total_cases() == 15);
  r.checks.push_back({"c", 7, 2, {}});
  CHECK(!r.pass());
}
