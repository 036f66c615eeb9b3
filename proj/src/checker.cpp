#include "dg/suites.hpp"

#include <map>
#include <set>

namespace dg {

namespace {

void require_finite(const Ring& r, const char* what) {
  if (!r.size())
    throw DomainError(std::string(what) + " needs a finite ring, got " + r.describe());
}

// Append another suite's checks under a name prefix.
void absorb_into(SuiteReport& report, SuiteReport sub, const std::string& prefix) {
  for (CheckResult& c : sub.checks) {
    c.name = prefix + ": " + c.name;
    report.checks.push_back(std::move(c));
  }
}

}  // namespace

SuiteReport run_prolong1_suite(const LinearSetPtr& set) {
  require_finite(*set->ring, "the first-level groupoid suite");
  const Ring& r = *set->ring;

  GroupoidSpec<Arrow1, BasePoint1> g;
  g.name = "first-level groupoid on " + set->describe();
  g.morphisms = enumerate_arrow1(set);
  g.bases = enumerate_base1(set);
  g.source = [](const Arrow1& a) { return pi0(a); };
  g.target = [](const Arrow1& a) { return pi1(a); };
  g.unit = [set](const BasePoint1& b) { return z_pi(set, b); };
  g.compose = [](const Arrow1& hi, const Arrow1& lo) { return compose_star(hi, lo); };
  g.invert = [](const Arrow1& a) { return std::optional<Arrow1>(invert_star(a)); };
  g.eq = [](const Arrow1& a, const Arrow1& b) { return arrow_eq(a, b); };
  g.base_eq = [&r](const BasePoint1& a, const BasePoint1& b) { return base_eq(a, b, r); };
  g.show = [](const Arrow1& a) { return to_string(a); };
  g.show_base = [&r](const BasePoint1& b) { return to_string(b, r); };
  return run_groupoid_suite(g);
}

SuiteReport run_prolong2_suite(const LinearSetPtr& set) {
  require_finite(*set->ring, "the second-level double suite");
  const Ring& r = *set->ring;
  RingPtr rp = set->ring;

  DoubleSpec<Arrow2, Arrow1, BasePoint2, BasePoint1> d;
  d.name = "second-level double structure on " + set->describe();
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
  d.d0_low = [&r](const BasePoint2& b) { return partial0(b, r); };
  d.d1_low = [](const BasePoint2& b) { return partial1(b); };
  d.z_d = [](const Arrow1& a) { return z_partial(a); };
  d.z_d_low = [rp](const BasePoint1& b) { return z_partial(b, *rp); };

  d.star = [](const Arrow2& hi, const Arrow2& lo) { return compose_star(hi, lo); };
  d.star_low = [](const Arrow1& hi, const Arrow1& lo) { return compose_star(hi, lo); };
  d.bullet = [](const Arrow2& outer, const Arrow2& inner) {
    return compose_bullet(outer, inner);
  };
  d.bullet_low = [&r](const BasePoint2& outer, const BasePoint2& inner) {
    return compose_bullet_base(outer, inner, r);
  };
  d.star_invert = [](const Arrow2& a) { return invert_star(a); };
  d.star_invert_low = [](const Arrow1& a) { return invert_star(a); };

  d.eq11 = [](const Arrow2& a, const Arrow2& b) { return arrow_eq(a, b); };
  d.eq10 = [](const Arrow1& a, const Arrow1& b) { return arrow_eq(a, b); };
  d.eq01 = [&r](const BasePoint2& a, const BasePoint2& b) { return base_eq(a, b, r); };
  d.eq00 = [&r](const BasePoint1& a, const BasePoint1& b) { return base_eq(a, b, r); };
  d.show11 = [](const Arrow2& a) { return to_string(a); };
  d.show10 = [](const Arrow1& a) { return to_string(a); };
  d.show01 = [&r](const BasePoint2& b) { return to_string(b, r); };
  d.show00 = [&r](const BasePoint1& b) { return to_string(b, r); };
  return run_doublecat_suite(d);
}

SuiteReport run_prolong_pregroupoid_suite(const LinearSetPtr& set) {
  require_finite(*set->ring, "the pregroupoid suite");
  const Ring& r = *set->ring;

  PregroupoidSpec<Arrow1> g;
  g.name = "pregroupoid bracket on " + set->describe();
  g.morphisms = enumerate_arrow1(set);
  g.a_key = [&r](const Arrow1& a) { return to_string(pi0(a), r); };
  g.b_key = [&r](const Arrow1& a) { return to_string(pi1(a), r); };
  g.ternary = [](const Arrow1& p, const Arrow1& q, const Arrow1& rr) {
    return pregroupoid_ternary(p, q, rr);
  };
  g.eq = [](const Arrow1& a, const Arrow1& b) { return arrow_eq(a, b); };
  g.show = [](const Arrow1& a) { return to_string(a); };
  return run_pregroupoid_suite(g);
}

SuiteReport run_interpolation_suite(const LinearSetPtr& set) {
  require_finite(*set->ring, "the interpolation suite");
  const Ring& r = *set->ring;
  SuiteReport report;
  report.suite = "interpolation on " + set->describe();

  size_t n_points = enumerate_points(set).size();

  CheckResult bij{"unit-scale trivialization is a bijection onto point pairs", 0, 0, {}};
  CheckResult round{"unit-scale trivialization round-trips", 0, 0, {}};
  CheckResult ends{"unit-scale trivialization matches the projections", 0, 0, {}};
  CheckResult functor{"unit-scale trivialization turns star into pair composition", 0, 0, {}};
  CheckResult zero_proj{"zero-scale arrows are loops", 0, 0, {}};
  CheckResult zero_add{"zero-scale composition adds directions", 0, 0, {}};
  CheckResult zero_comm{"zero-scale composition is commutative", 0, 0, {}};

  auto pair_key = [&r](const PairArrow& p) {
    return vec_to_string(r, p.y) + "<-" + vec_to_string(r, p.x);
  };

  for (const RingElem& t : r.all_elements()) {
    std::vector<Arrow1> arrows = enumerate_arrow1(set, t);
    if (r.is_unit(t)) {
      std::map<std::string, size_t> image;
      for (const Arrow1& a : arrows) {
        PairArrow p = phi_trivialize(a);
        ++bij.cases;
        if (!image.emplace(pair_key(p), size_t{1}).second)
          detail::record_failure(bij, to_string(a), pair_key(p), "a fresh point pair");

        ++round.cases;
        Arrow1 back = phi_untrivialize(set, p);
        if (!arrow_eq(back, a))
          detail::record_failure(round, to_string(a), to_string(back), to_string(a));

        ++ends.cases;
        if (!vec_eq(r, p.x, pi0(a).x) || !vec_eq(r, p.y, pi1(a).x))
          detail::record_failure(ends, to_string(a), pair_key(p),
                                 "pair (target <- source) of the arrow");
      }
      ++bij.cases;
      if (image.size() != n_points * n_points)
        detail::record_failure(bij, "t=" + r.to_string(t),
                               std::to_string(image.size()) + " pairs reached",
                               std::to_string(n_points * n_points) + " point pairs");

      // Star against pair composition, joined on matching endpoints.
      for (const Arrow1& lo : arrows) {
        for (const Arrow1& hi : arrows) {
          if (!star_composable(hi, lo)) continue;
          ++functor.cases;
          PairArrow pl = phi_trivialize(lo), ph = phi_trivialize(hi);
          // (z <- y) after (y <- x) is (z <- x); composability means ph.x == pl.y.
          PairArrow want{ph.y, pl.x, t};
          PairArrow got = phi_trivialize(compose_star(hi, lo));
          if (!vec_eq(r, got.y, want.y) || !vec_eq(r, got.x, want.x))
            detail::record_failure(functor, to_string(hi) + " * " + to_string(lo), pair_key(got),
                                   pair_key(want));
        }
      }
    }

    if (r.is_zero(t)) {
      for (const Arrow1& a : arrows) {
        ++zero_proj.cases;
        if (!base_eq(pi0(a), pi1(a), r))
          detail::record_failure(zero_proj, to_string(a), to_string(pi1(a), r),
                                 to_string(pi0(a), r));
      }
      for (const Arrow1& a : arrows) {
        for (const Arrow1& b : arrows) {
          if (!star_composable(b, a)) continue;
          ++zero_add.cases;
          Arrow1 c = compose_star(b, a);
          if (!vec_eq(r, c.v, vec_add(r, b.v, a.v)) || !vec_eq(r, c.x, a.x))
            detail::record_failure(zero_add, to_string(b) + " * " + to_string(a), to_string(c),
                                   "the direction sum at the same point");
          ++zero_comm.cases;
          Arrow1 c2 = compose_star(a, b);
          if (!arrow_eq(c, c2))
            detail::record_failure(zero_comm, to_string(b) + " * " + to_string(a), to_string(c),
                                   to_string(c2));
        }
      }
    }
  }

  report.checks = {std::move(bij),       std::move(round),    std::move(ends),
                   std::move(functor),   std::move(zero_proj), std::move(zero_add),
                   std::move(zero_comm)};
  return report;
}

SuiteReport run_nonsingular_trivialization_suite(const LinearSetPtr& set) {
  require_finite(*set->ring, "the nonsingular trivialization suite");
  const Ring& r = *set->ring;
  SuiteReport report;
  report.suite = "nonsingular trivialization on " + set->describe();

  size_t n_points = enumerate_points(set).size();

  CheckResult round{"round-trips through the pair picture", 0, 0, {}};
  CheckResult bij{"bijection onto point pairs at each unit (s, t)", 0, 0, {}};
  CheckResult star_c{"star becomes pair composition", 0, 0, {}};
  CheckResult bullet_c{"bullet becomes scale composition", 0, 0, {}};

  auto quad_key = [&r](const QuadArrow& q) {
    return vec_to_string(r, q.y) + "<-" + vec_to_string(r, q.x) + ";" + r.to_string(q.u) + "," +
           r.to_string(q.t);
  };

  std::vector<Arrow2> cells = enumerate_arrow2(set);
  // Group the unit-scale cells by (s, t).
  std::map<std::string, std::vector<Arrow2>> by_scale;
  for (const Arrow2& a : cells) {
    if (r.is_unit(a.s) && r.is_unit(a.t))
      by_scale[r.to_string(a.s) + "," + r.to_string(a.t)].push_back(a);
  }

  for (const auto& [scale, group] : by_scale) {
    std::set<std::string> image;
    for (const Arrow2& a : group) {
      QuadArrow q = nonsingular_trivialize(a);
      ++round.cases;
      Arrow2 back = nonsingular_untrivialize(set, q);
      if (!arrow_eq(back, a))
        detail::record_failure(round, to_string(a), to_string(back), to_string(a));
      ++bij.cases;
      if (!image.insert(quad_key(q)).second)
        detail::record_failure(bij, to_string(a), quad_key(q), "a fresh image");
    }
    ++bij.cases;
    if (image.size() != n_points * n_points)
      detail::record_failure(bij, "s,t=" + scale, std::to_string(image.size()) + " images",
                             std::to_string(n_points * n_points));

    for (const Arrow2& lo : group) {
      for (const Arrow2& hi : group) {
        if (!star_composable(hi, lo)) continue;
        ++star_c.cases;
        QuadArrow ql = nonsingular_trivialize(lo), qh = nonsingular_trivialize(hi);
        QuadArrow got = nonsingular_trivialize(compose_star(hi, lo));
        // ((y' <- x'), u, t) * ((y <- x), u, t) = ((y' <- x), u, t) when x' = y.
        bool ok = vec_eq(r, qh.x, ql.y) && vec_eq(r, got.y, qh.y) && vec_eq(r, got.x, ql.x) &&
                  r.eq(got.u, ql.u) && r.eq(got.t, ql.t);
        if (!ok)
          detail::record_failure(star_c, to_string(hi) + " * " + to_string(lo), quad_key(got),
                                 quad_key(QuadArrow{qh.y, ql.x, ql.u, ql.t}));
      }
    }
  }

  // Bullet crosses scale groups: enumerate composable cell pairs directly.
  for (const Arrow2& inner : cells) {
    if (!r.is_unit(inner.s) || !r.is_unit(inner.t)) continue;
    for (const Arrow2& outer : cells) {
      if (!r.is_unit(outer.s) || !r.is_unit(outer.t)) continue;
      if (!bullet_composable(outer, inner)) continue;
      ++bullet_c.cases;
      QuadArrow qi = nonsingular_trivialize(inner);
      QuadArrow qo = nonsingular_trivialize(outer);
      QuadArrow got = nonsingular_trivialize(compose_bullet(outer, inner));
      // ((y <- x), u', t') . ((y <- x), u, t) = ((y <- x), u, t') when u' = t.
      bool ok = vec_eq(r, qo.y, qi.y) && vec_eq(r, qo.x, qi.x) && r.eq(qo.u, qi.t) &&
                vec_eq(r, got.y, qi.y) && vec_eq(r, got.x, qi.x) && r.eq(got.u, qi.u) &&
                r.eq(got.t, qo.t);
      if (!ok)
        detail::record_failure(bullet_c, to_string(outer) + " . " + to_string(inner),
                               quad_key(got), quad_key(QuadArrow{qi.y, qi.x, qi.u, qo.t}));
    }
  }

  report.checks = {std::move(round), std::move(bij), std::move(star_c), std::move(bullet_c)};
  return report;
}

namespace {

struct ActionMorphism {
  RingElem v, s, t;
};
struct ActionObject {
  RingElem v, k;
};
struct ScaleMorphism {
  RingElem s, t;
};

}  // namespace

SuiteReport run_scaled_action_suite(const RingPtr& ring) {
  require_finite(*ring, "the scaled action suite");
  const Ring& r = *ring;
  std::vector<RingElem> elems = r.all_elements();

  SuiteReport report;
  report.suite = "scaled action category over " + r.describe();

  auto show_obj = [&r](const ActionObject& o) {
    return "(" + r.to_string(o.v) + ";" + r.to_string(o.k) + ")";
  };
  auto show_mor = [&r](const ActionMorphism& m) {
    return "(" + r.to_string(m.v) + ";" + r.to_string(m.s) + "," + r.to_string(m.t) + ")";
  };

  GroupoidSpec<ActionMorphism, ActionObject> g;
  g.name = "scaled directions";
  for (const RingElem& v : elems)
    for (const RingElem& s : elems)
      for (const RingElem& t : elems) g.morphisms.push_back({v, s, t});
  for (const RingElem& v : elems)
    for (const RingElem& k : elems) g.bases.push_back({v, k});
  g.source = [&r](const ActionMorphism& m) { return ActionObject{m.v, r.mul(m.s, m.t)}; };
  g.target = [&r](const ActionMorphism& m) { return ActionObject{r.mul(m.v, m.s), m.t}; };
  g.unit = [&r](const ActionObject& o) { return ActionMorphism{o.v, r.one(), o.k}; };
  g.compose = [&r](const ActionMorphism& hi, const ActionMorphism& lo) {
    // Defined when hi.v == lo.v * lo.s and hi.s * hi.t == lo.t.
    if (!r.eq(hi.v, r.mul(lo.v, lo.s)) || !r.eq(r.mul(hi.s, hi.t), lo.t))
      throw DomainError("scaled-action morphisms are not composable");
    return ActionMorphism{lo.v, r.mul(lo.s, hi.s), hi.t};
  };
  g.invert = [&r](const ActionMorphism& m) -> std::optional<ActionMorphism> {
    auto inv = r.is_unit(m.s);
    if (!inv) return std::nullopt;
    return ActionMorphism{r.mul(m.v, m.s), *inv, r.mul(m.s, m.t)};
  };
  g.expect_inverse = [&r](const ActionMorphism& m) { return r.is_unit(m.s).has_value(); };
  g.eq = [&r](const ActionMorphism& a, const ActionMorphism& b) {
    return r.eq(a.v, b.v) && r.eq(a.s, b.s) && r.eq(a.t, b.t);
  };
  g.base_eq = [&r](const ActionObject& a, const ActionObject& b) {
    return r.eq(a.v, b.v) && r.eq(a.k, b.k);
  };
  g.show = show_mor;
  g.show_base = show_obj;
  absorb_into(report, run_groupoid_suite(g), "scaled directions");

  // A non-unit scale coordinate admits no inverse at all.
  CheckResult no_inv{"no inverse exists at a non-unit scale", 0, 0, {}};
  auto obj_key = [&](const ActionObject& o) { return show_obj(o); };
  for (const ActionMorphism& m : g.morphisms) {
    if (r.is_unit(m.s)) continue;
    ++no_inv.cases;
    ActionObject src = g.source(m), tgt = g.target(m);
    ActionMorphism unit_src = g.unit(src), unit_tgt = g.unit(tgt);
    for (const ActionMorphism& c : g.morphisms) {
      if (obj_key(g.source(c)) != obj_key(tgt) || obj_key(g.target(c)) != obj_key(src)) continue;
      if (g.eq(g.compose(c, m), unit_src) && g.eq(g.compose(m, c), unit_tgt)) {
        detail::record_failure(no_inv, show_mor(m), show_mor(c) + " inverts it",
                               "no two-sided inverse");
        break;
      }
    }
  }
  report.checks.push_back(std::move(no_inv));

  // The scale category itself: arrows (s, t) from s*t to t.
  auto show_scale = [&r](const ScaleMorphism& m) {
    return "(" + r.to_string(m.s) + "," + r.to_string(m.t) + ")";
  };
  GroupoidSpec<ScaleMorphism, RingElem> sc;
  sc.name = "scale category";
  for (const RingElem& s : elems)
    for (const RingElem& t : elems) sc.morphisms.push_back({s, t});
  sc.bases = elems;
  sc.source = [&r](const ScaleMorphism& m) { return r.mul(m.s, m.t); };
  sc.target = [](const ScaleMorphism& m) { return m.t; };
  sc.unit = [&r](const RingElem& k) { return ScaleMorphism{r.one(), k}; };
  sc.compose = [&r](const ScaleMorphism& hi, const ScaleMorphism& lo) {
    if (!r.eq(r.mul(hi.s, hi.t), lo.t))
      throw DomainError("scale morphisms are not composable");
    return ScaleMorphism{r.mul(lo.s, hi.s), hi.t};
  };
  sc.invert = [&r](const ScaleMorphism& m) -> std::optional<ScaleMorphism> {
    auto inv = r.is_unit(m.s);
    if (!inv) return std::nullopt;
    return ScaleMorphism{*inv, r.mul(m.s, m.t)};
  };
  sc.expect_inverse = [&r](const ScaleMorphism& m) { return r.is_unit(m.s).has_value(); };
  sc.eq = [&r](const ScaleMorphism& a, const ScaleMorphism& b) {
    return r.eq(a.s, b.s) && r.eq(a.t, b.t);
  };
  sc.base_eq = [&r](const RingElem& a, const RingElem& b) { return r.eq(a, b); };
  sc.show = show_scale;
  sc.show_base = [&r](const RingElem& k) { return r.to_string(k); };
  absorb_into(report, run_groupoid_suite(sc), "scale category");

  // Forgetting the direction coordinate is a functor onto the scale category.
  CheckResult forget{"forgetting the direction is functorial", 0, 0, {}};
  {
    std::map<std::string, std::vector<size_t>> by_source;
    for (size_t i = 0; i < g.morphisms.size(); ++i)
      by_source[obj_key(g.source(g.morphisms[i]))].push_back(i);
    for (const ActionMorphism& lo : g.morphisms) {
      auto it = by_source.find(obj_key(g.target(lo)));
      if (it == by_source.end()) continue;
      for (size_t j : it->second) {
        const ActionMorphism& hi = g.morphisms[j];
        ++forget.cases;
        ActionMorphism comp = g.compose(hi, lo);
        ScaleMorphism plo{lo.s, lo.t}, phi{hi.s, hi.t};
        ScaleMorphism want = sc.compose(phi, plo);  // defined: hi.s*hi.t == lo.t
        if (!sc.eq(ScaleMorphism{comp.s, comp.t}, want))
          detail::record_failure(forget, show_mor(hi) + " o " + show_mor(lo),
                                 show_scale({comp.s, comp.t}), show_scale(want));
      }
    }
  }
  report.checks.push_back(std::move(forget));

  return report;
}

}  // namespace dg
