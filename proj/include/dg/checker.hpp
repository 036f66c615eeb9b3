// Generic machine verification of groupoid, double-category, scaled-action,
// and pregroupoid axioms over enumerated carriers. Suites run every check on
// every (composable) tuple of the supplied morphisms, join composability by
// endpoint keys, and report per-check case counts with up to a fixed number
// of counterexamples.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dg {

constexpr size_t kMaxCounterexamples = 10;

struct Counterexample {
  std::string inputs;  // the tuple that failed
  std::string lhs, rhs;
};

struct CheckResult {
  std::string name;
  size_t cases = 0;
  size_t failures = 0;
  std::vector<Counterexample> counterexamples;  // capped at kMaxCounterexamples
  bool pass() const { return failures == 0; }
};

struct SuiteReport {
  std::string suite;
  uint64_t seed = 0;  // 0 when the carrier was enumerated exhaustively
  std::vector<CheckResult> checks;
  bool pass() const {
    for (const CheckResult& c : checks)
      if (!c.pass()) return false;
    return true;
  }
  size_t total_cases() const {
    size_t n = 0;
    for (const CheckResult& c : checks) n += c.cases;
    return n;
  }
};

namespace detail {

inline void record_failure(CheckResult& check, std::string inputs, std::string lhs,
                           std::string rhs) {
  ++check.failures;
  if (check.counterexamples.size() < kMaxCounterexamples)
    check.counterexamples.push_back({std::move(inputs), std::move(lhs), std::move(rhs)});
}

}  // namespace detail

// A one-sorted category/groupoid presentation with string-keyed endpoints.
// `invert` may be absent (plain category) or partial (return nullopt where no
// inverse is expected; the suite then only checks totality when `expect_inverse`
// says the morphism should have one).
template <class M, class B>
struct GroupoidSpec {
  std::string name;
  std::vector<M> morphisms;
  std::vector<B> bases;  // the objects touched (for unit-endpoint checks)
  std::function<B(const M&)> source, target;
  std::function<M(const B&)> unit;
  // compose(hi, lo): lo first, then hi; defined when source(hi) == target(lo).
  std::function<M(const M&, const M&)> compose;
  std::function<std::optional<M>(const M&)> invert;       // may be null
  std::function<bool(const M&)> expect_inverse;           // may be null (=> all)
  std::function<bool(const M&, const M&)> eq;
  std::function<bool(const B&, const B&)> base_eq;
  std::function<std::string(const M&)> show;
  std::function<std::string(const B&)> show_base;
};

template <class M, class B>
SuiteReport run_groupoid_suite(const GroupoidSpec<M, B>& g);

// A pregroupoid: endpoint maps to two object sorts and a ternary partial
// operation [p, q, r], defined iff a(p) == a(q) and b(q) == b(r).
template <class M>
struct PregroupoidSpec {
  std::string name;
  std::vector<M> morphisms;
  std::function<std::string(const M&)> a_key, b_key;  // endpoint keys
  std::function<M(const M&, const M&, const M&)> ternary;
  std::function<bool(const M&, const M&)> eq;
  std::function<std::string(const M&)> show;
};

template <class M>
SuiteReport run_pregroupoid_suite(const PregroupoidSpec<M>& g);

// An edge-symmetric double category presentation: cells C11 carry two
// compositions, * along pi-endpoints (valued in C01) and • along
// d-endpoints (valued in C10); the lower levels C10 and C01 compose over C00.
template <class C11, class C10, class C01, class C00>
struct DoubleSpec {
  std::string name;
  std::vector<C11> cells;
  std::vector<C10> edges10;  // •-objects / *-morphisms downstairs
  std::vector<C01> edges01;  // *-objects / •-morphisms downstairs
  std::vector<C00> points;

  std::function<C01(const C11&)> pi0, pi1;
  std::function<C00(const C10&)> pi0_low, pi1_low;
  std::function<C11(const C01&)> z_pi;
  std::function<C10(const C00&)> z_pi_low;

  std::function<C10(const C11&)> d0, d1;
  std::function<C00(const C01&)> d0_low, d1_low;
  std::function<C11(const C10&)> z_d;
  std::function<C01(const C00&)> z_d_low;

  // star(hi, lo): lo first; defined when pi0(hi) == pi1(lo).
  std::function<C11(const C11&, const C11&)> star;
  std::function<C10(const C10&, const C10&)> star_low;
  // bullet(outer, inner): defined when d0(outer) == d1(inner).
  std::function<C11(const C11&, const C11&)> bullet;
  std::function<C01(const C01&, const C01&)> bullet_low;

  std::function<C11(const C11&)> star_invert;      // may be null
  std::function<C10(const C10&)> star_invert_low;  // may be null

  std::function<bool(const C11&, const C11&)> eq11;
  std::function<bool(const C10&, const C10&)> eq10;
  std::function<bool(const C01&, const C01&)> eq01;
  std::function<bool(const C00&, const C00&)> eq00;
  std::function<std::string(const C11&)> show11;
  std::function<std::string(const C10&)> show10;
  std::function<std::string(const C01&)> show01;
  std::function<std::string(const C00&)> show00;
};

template <class C11, class C10, class C01, class C00>
SuiteReport run_doublecat_suite(const DoubleSpec<C11, C10, C01, C00>& d);

// ---- implementation ---------------------------------------------------------

template <class M, class B>
SuiteReport run_groupoid_suite(const GroupoidSpec<M, B>& g) {
  SuiteReport report;
  report.suite = g.name;

  auto key_of = [&](const B& b) { return g.show_base(b); };

  // Index morphisms by source and target keys for composable joins.
  std::map<std::string, std::vector<size_t>> by_source, by_target;
  for (size_t i = 0; i < g.morphisms.size(); ++i) {
    by_source[key_of(g.source(g.morphisms[i]))].push_back(i);
    by_target[key_of(g.target(g.morphisms[i]))].push_back(i);
  }

  CheckResult unit_endpoints{"unit arrows sit at their object", 0, 0, {}};
  for (const B& b : g.bases) {
    ++unit_endpoints.cases;
    M u = g.unit(b);
    if (!g.base_eq(g.source(u), b) || !g.base_eq(g.target(u), b))
      detail::record_failure(unit_endpoints, g.show_base(b),
                             g.show_base(g.source(u)) + " -> " + g.show_base(g.target(u)),
                             "expected both endpoints at the object");
  }
  report.checks.push_back(std::move(unit_endpoints));

  CheckResult endpoints{"composite endpoints", 0, 0, {}};
  CheckResult units{"left and right unit laws", 0, 0, {}};
  CheckResult assoc{"associativity on composable triples", 0, 0, {}};

  for (const M& f : g.morphisms) {
    ++units.cases;
    M right = g.compose(f, g.unit(g.source(f)));
    M left = g.compose(g.unit(g.target(f)), f);
    if (!g.eq(right, f) || !g.eq(left, f))
      detail::record_failure(units, g.show(f),
                             g.show(right) + " / " + g.show(left), g.show(f));
  }

  // Composable pairs (hi, lo): source(hi) == target(lo).
  for (size_t lo = 0; lo < g.morphisms.size(); ++lo) {
    const M& mlo = g.morphisms[lo];
    auto it = by_source.find(key_of(g.target(mlo)));
    if (it == by_source.end()) continue;
    for (size_t hi : it->second) {
      const M& mhi = g.morphisms[hi];
      ++endpoints.cases;
      M c = g.compose(mhi, mlo);
      if (!g.base_eq(g.source(c), g.source(mlo)) || !g.base_eq(g.target(c), g.target(mhi)))
        detail::record_failure(endpoints, g.show(mhi) + " * " + g.show(mlo), g.show(c),
                               "endpoints of the composite");
      // Triples: anything whose source is target(hi).
      auto it2 = by_source.find(key_of(g.target(mhi)));
      if (it2 == by_source.end()) continue;
      for (size_t top : it2->second) {
        const M& mtop = g.morphisms[top];
        ++assoc.cases;
        M lhs = g.compose(g.compose(mtop, mhi), mlo);
        M rhs = g.compose(mtop, g.compose(mhi, mlo));
        if (!g.eq(lhs, rhs))
          detail::record_failure(assoc,
                                 g.show(mtop) + " * " + g.show(mhi) + " * " + g.show(mlo),
                                 g.show(lhs), g.show(rhs));
      }
    }
  }
  report.checks.push_back(std::move(endpoints));
  report.checks.push_back(std::move(units));
  report.checks.push_back(std::move(assoc));

  if (g.invert) {
    CheckResult inverses{"inverse laws", 0, 0, {}};
    for (const M& f : g.morphisms) {
      bool expected = g.expect_inverse ? g.expect_inverse(f) : true;
      ++inverses.cases;
      std::optional<M> inv = g.invert(f);
      if (!inv) {
        if (expected)
          detail::record_failure(inverses, g.show(f), "no inverse", "an inverse");
        continue;
      }
      // A claimed inverse for a morphism that should not have one only fails
      // the check if it actually works, so verify it either way.
      M back = g.compose(*inv, f);
      M forth = g.compose(f, *inv);
      M src_unit = g.unit(g.source(f));
      M tgt_unit = g.unit(g.target(f));
      bool ok = g.eq(back, src_unit) && g.eq(forth, tgt_unit);
      if (ok != expected)
        detail::record_failure(inverses, g.show(f),
                               ok ? "inverse works" : g.show(back) + " / " + g.show(forth),
                               expected ? "unit composites" : "no working inverse");
    }
    report.checks.push_back(std::move(inverses));
  }

  return report;
}

template <class M>
SuiteReport run_pregroupoid_suite(const PregroupoidSpec<M>& g) {
  SuiteReport report;
  report.suite = g.name;

  std::map<std::string, std::vector<size_t>> by_a, by_b;
  for (size_t i = 0; i < g.morphisms.size(); ++i) {
    by_a[g.a_key(g.morphisms[i])].push_back(i);
    by_b[g.b_key(g.morphisms[i])].push_back(i);
  }
  auto fiber = [](const std::map<std::string, std::vector<size_t>>& idx,
                  const std::string& key) -> const std::vector<size_t>* {
    auto it = idx.find(key);
    return it == idx.end() ? nullptr : &it->second;
  };

  CheckResult endpoints{"ternary endpoints", 0, 0, {}};
  CheckResult idem{"idempotency [p,p,r] = r and [p,r,r] = p", 0, 0, {}};

  // Pairs (p, q) with a(p) == a(q): [p, q, ...] needs b(q) == b(r).
  for (size_t p = 0; p < g.morphisms.size(); ++p) {
    const M& mp = g.morphisms[p];
    const auto* qs = fiber(by_a, g.a_key(mp));
    if (!qs) continue;
    for (size_t q : *qs) {
      const M& mq = g.morphisms[q];
      const auto* rs = fiber(by_b, g.b_key(mq));
      if (!rs) continue;
      for (size_t r : *rs) {
        const M& mr = g.morphisms[r];
        ++endpoints.cases;
        M res = g.ternary(mp, mq, mr);
        if (g.a_key(res) != g.a_key(mr) || g.b_key(res) != g.b_key(mp))
          detail::record_failure(endpoints,
                                 "[" + g.show(mp) + ", " + g.show(mq) + ", " + g.show(mr) + "]",
                                 g.show(res), "a-endpoint of third, b-endpoint of first");
      }
    }
  }

  for (size_t p = 0; p < g.morphisms.size(); ++p) {
    const M& mp = g.morphisms[p];
    // [p, p, r] for every r with b(p) == b(r).
    if (const auto* rs = fiber(by_b, g.b_key(mp))) {
      for (size_t r : *rs) {
        const M& mr = g.morphisms[r];
        ++idem.cases;
        M res = g.ternary(mp, mp, mr);
        if (!g.eq(res, mr))
          detail::record_failure(idem, "[" + g.show(mp) + ", " + g.show(mp) + ", " + g.show(mr) + "]",
                                 g.show(res), g.show(mr));
      }
    }
    // [p, r, r] for every r with a(p) == a(r).
    if (const auto* rs = fiber(by_a, g.a_key(mp))) {
      for (size_t r : *rs) {
        const M& mr = g.morphisms[r];
        ++idem.cases;
        M res = g.ternary(mp, mr, mr);
        if (!g.eq(res, mp))
          detail::record_failure(idem, "[" + g.show(mp) + ", " + g.show(mr) + ", " + g.show(mr) + "]",
                                 g.show(res), g.show(mp));
      }
    }
  }
  report.checks.push_back(std::move(endpoints));
  report.checks.push_back(std::move(idem));

  // Para-associativity: [x, [u,v,w], z] = [[x,w,v], u, z] = [x, w, [v,u,z]]
  // over quintuples (x,u,v,w,z) subject to a(u)=a(v), b(v)=b(w), a(x)=a(w),
  // b(u)=b(z); under these all three forms are defined.
  CheckResult pa{"para-associativity", 0, 0, {}};
  for (size_t v = 0; v < g.morphisms.size(); ++v) {
    const M& mv = g.morphisms[v];
    const auto* us = fiber(by_a, g.a_key(mv));
    const auto* ws = fiber(by_b, g.b_key(mv));
    if (!us || !ws) continue;
    for (size_t u : *us) {
      const M& mu = g.morphisms[u];
      const auto* zs = fiber(by_b, g.b_key(mu));
      if (!zs) continue;
      for (size_t w : *ws) {
        const M& mw = g.morphisms[w];
        const auto* xs = fiber(by_a, g.a_key(mw));
        if (!xs) continue;
        for (size_t x : *xs) {
          const M& mx = g.morphisms[x];
          for (size_t z : *zs) {
            const M& mz = g.morphisms[z];
            ++pa.cases;
            M f1 = g.ternary(mx, g.ternary(mu, mv, mw), mz);
            M f2 = g.ternary(g.ternary(mx, mw, mv), mu, mz);
            M f3 = g.ternary(mx, mw, g.ternary(mv, mu, mz));
            if (!g.eq(f1, f2) || !g.eq(f1, f3))
              detail::record_failure(
                  pa,
                  "x=" + g.show(mx) + " u=" + g.show(mu) + " v=" + g.show(mv) +
                      " w=" + g.show(mw) + " z=" + g.show(mz),
                  g.show(f1), g.show(f2) + " / " + g.show(f3));
          }
        }
      }
    }
  }
  report.checks.push_back(std::move(pa));
  return report;
}

template <class C11, class C10, class C01, class C00>
SuiteReport run_doublecat_suite(const DoubleSpec<C11, C10, C01, C00>& d) {
  SuiteReport report;
  report.suite = d.name;

  // (1) The two projection pairs commute, levelwise.
  CheckResult proj{"projections commute", 0, 0, {}};
  for (const C11& a : d.cells) {
    ++proj.cases;
    bool ok = true;
    std::string lhs, rhs;
    const std::function<C01(const C11&)> pis[2] = {d.pi0, d.pi1};
    const std::function<C10(const C11&)> ds[2] = {d.d0, d.d1};
    const std::function<C00(const C01&)> ds_low[2] = {d.d0_low, d.d1_low};
    const std::function<C00(const C10&)> pis_low[2] = {d.pi0_low, d.pi1_low};
    for (int i = 0; i < 2 && ok; ++i) {
      for (int j = 0; j < 2 && ok; ++j) {
        C00 via_pi = ds_low[i](pis[j](a));
        C00 via_d = pis_low[j](ds[i](a));
        if (!d.eq00(via_pi, via_d)) {
          ok = false;
          lhs = d.show00(via_pi);
          rhs = d.show00(via_d);
        }
      }
    }
    if (!ok) detail::record_failure(proj, d.show11(a), lhs, rhs);
  }
  for (const C00& w : d.points) {
    ++proj.cases;
    C11 via_pi = d.z_pi(d.z_d_low(w));
    C11 via_d = d.z_d(d.z_pi_low(w));
    if (!d.eq11(via_pi, via_d))
      detail::record_failure(proj, d.show00(w), d.show11(via_pi), d.show11(via_d));
  }
  report.checks.push_back(std::move(proj));

  // (2) Zero sections split both projections.
  CheckResult sections{"sections split projections", 0, 0, {}};
  for (const C10& u : d.edges10) {
    ++sections.cases;
    C11 cell = d.z_d(u);
    if (!d.eq10(d.d0(cell), u) || !d.eq10(d.d1(cell), u))
      detail::record_failure(sections, d.show10(u),
                             d.show10(d.d0(cell)) + " / " + d.show10(d.d1(cell)), d.show10(u));
  }
  for (const C01& b : d.edges01) {
    ++sections.cases;
    C11 cell = d.z_pi(b);
    if (!d.eq01(d.pi0(cell), b) || !d.eq01(d.pi1(cell), b))
      detail::record_failure(sections, d.show01(b),
                             d.show01(d.pi0(cell)) + " / " + d.show01(d.pi1(cell)), d.show01(b));
  }
  for (const C00& w : d.points) {
    ++sections.cases;
    C10 e10 = d.z_pi_low(w);
    C01 e01 = d.z_d_low(w);
    if (!d.eq00(d.pi0_low(e10), w) || !d.eq00(d.pi1_low(e10), w) ||
        !d.eq00(d.d0_low(e01), w) || !d.eq00(d.d1_low(e01), w))
      detail::record_failure(sections, d.show00(w), "split failure", d.show00(w));
  }
  report.checks.push_back(std::move(sections));

  // (3) Mixed sections: z of one family intertwines the other's projections.
  CheckResult mixed{"sections commute with the other projections", 0, 0, {}};
  for (const C01& b : d.edges01) {
    ++mixed.cases;
    C11 cell = d.z_pi(b);
    if (!d.eq10(d.d0(cell), d.z_pi_low(d.d0_low(b))) ||
        !d.eq10(d.d1(cell), d.z_pi_low(d.d1_low(b))))
      detail::record_failure(mixed, d.show01(b), d.show10(d.d0(cell)),
                             d.show10(d.z_pi_low(d.d0_low(b))));
  }
  for (const C10& u : d.edges10) {
    ++mixed.cases;
    C11 cell = d.z_d(u);
    if (!d.eq01(d.pi0(cell), d.z_d_low(d.pi0_low(u))) ||
        !d.eq01(d.pi1(cell), d.z_d_low(d.pi1_low(u))))
      detail::record_failure(mixed, d.show10(u), d.show01(d.pi0(cell)),
                             d.show01(d.z_d_low(d.pi0_low(u))));
  }
  report.checks.push_back(std::move(mixed));

  // (4)-(7) Category laws for all four compositions, via the one-sorted suite.
  auto absorb = [&report](SuiteReport sub, const std::string& prefix) {
    for (CheckResult& c : sub.checks) {
      c.name = prefix + ": " + c.name;
      report.checks.push_back(std::move(c));
    }
  };
  {
    GroupoidSpec<C11, C01> g;
    g.name = "star on cells";
    g.morphisms = d.cells;
    g.bases = d.edges01;
    g.source = d.pi0;
    g.target = d.pi1;
    g.unit = d.z_pi;
    g.compose = d.star;
    if (d.star_invert) g.invert = [&d](const C11& a) { return std::optional<C11>(d.star_invert(a)); };
    g.eq = d.eq11;
    g.base_eq = d.eq01;
    g.show = d.show11;
    g.show_base = d.show01;
    absorb(run_groupoid_suite(g), g.name);
  }
  {
    GroupoidSpec<C10, C00> g;
    g.name = "star on edges";
    g.morphisms = d.edges10;
    g.bases = d.points;
    g.source = d.pi0_low;
    g.target = d.pi1_low;
    g.unit = d.z_pi_low;
    g.compose = d.star_low;
    if (d.star_invert_low)
      g.invert = [&d](const C10& a) { return std::optional<C10>(d.star_invert_low(a)); };
    g.eq = d.eq10;
    g.base_eq = d.eq00;
    g.show = d.show10;
    g.show_base = d.show00;
    absorb(run_groupoid_suite(g), g.name);
  }
  {
    GroupoidSpec<C11, C10> g;
    g.name = "bullet on cells";
    g.morphisms = d.cells;
    g.bases = d.edges10;
    g.source = d.d0;
    g.target = d.d1;
    g.unit = d.z_d;
    g.compose = d.bullet;
    g.eq = d.eq11;
    g.base_eq = d.eq10;
    g.show = d.show11;
    g.show_base = d.show10;
    absorb(run_groupoid_suite(g), g.name);
  }
  {
    GroupoidSpec<C01, C00> g;
    g.name = "bullet on edges";
    g.morphisms = d.edges01;
    g.bases = d.points;
    g.source = d.d0_low;
    g.target = d.d1_low;
    g.unit = d.z_d_low;
    g.compose = d.bullet_low;
    g.eq = d.eq01;
    g.base_eq = d.eq00;
    g.show = d.show01;
    g.show_base = d.show00;
    absorb(run_groupoid_suite(g), g.name);
  }

  // Composable-pair indexes on cells, by endpoint keys.
  std::map<std::string, std::vector<size_t>> cells_by_pi0, cells_by_d0;
  for (size_t i = 0; i < d.cells.size(); ++i) {
    cells_by_pi0[d.show01(d.pi0(d.cells[i]))].push_back(i);
    cells_by_d0[d.show10(d.d0(d.cells[i]))].push_back(i);
  }
  struct Pair {
    size_t hi, lo;
  };
  std::vector<Pair> star_pairs, bullet_pairs;
  for (size_t lo = 0; lo < d.cells.size(); ++lo) {
    auto it = cells_by_pi0.find(d.show01(d.pi1(d.cells[lo])));
    if (it != cells_by_pi0.end())
      for (size_t hi : it->second) star_pairs.push_back({hi, lo});
  }
  for (size_t inner = 0; inner < d.cells.size(); ++inner) {
    // bullet(outer, inner) needs d0(outer) == d1(inner).
    auto it = cells_by_d0.find(d.show10(d.d1(d.cells[inner])));
    if (it != cells_by_d0.end())
      for (size_t outer : it->second) bullet_pairs.push_back({outer, inner});
  }

  // (8) The projections and sections are functorial for the compositions.
  CheckResult dfunc{"d-projections preserve star", 0, 0, {}};
  for (const Pair& p : star_pairs) {
    const C11& hi = d.cells[p.hi];
    const C11& lo = d.cells[p.lo];
    ++dfunc.cases;
    C11 comp = d.star(hi, lo);
    if (!d.eq10(d.d0(comp), d.star_low(d.d0(hi), d.d0(lo))) ||
        !d.eq10(d.d1(comp), d.star_low(d.d1(hi), d.d1(lo))))
      detail::record_failure(dfunc, d.show11(hi) + " * " + d.show11(lo), d.show10(d.d0(comp)),
                             d.show10(d.star_low(d.d0(hi), d.d0(lo))));
  }
  report.checks.push_back(std::move(dfunc));

  CheckResult pfunc{"pi-projections preserve bullet", 0, 0, {}};
  for (const Pair& p : bullet_pairs) {
    const C11& outer = d.cells[p.hi];
    const C11& inner = d.cells[p.lo];
    ++pfunc.cases;
    C11 comp = d.bullet(outer, inner);
    if (!d.eq01(d.pi0(comp), d.bullet_low(d.pi0(outer), d.pi0(inner))) ||
        !d.eq01(d.pi1(comp), d.bullet_low(d.pi1(outer), d.pi1(inner))))
      detail::record_failure(pfunc, d.show11(outer) + " . " + d.show11(inner),
                             d.show01(d.pi0(comp)),
                             d.show01(d.bullet_low(d.pi0(outer), d.pi0(inner))));
  }
  report.checks.push_back(std::move(pfunc));

  CheckResult zfunc{"sections preserve the compositions", 0, 0, {}};
  {
    std::map<std::string, std::vector<size_t>> e10_by_pi0;
    for (size_t i = 0; i < d.edges10.size(); ++i)
      e10_by_pi0[d.show00(d.pi0_low(d.edges10[i]))].push_back(i);
    for (size_t lo = 0; lo < d.edges10.size(); ++lo) {
      auto it = e10_by_pi0.find(d.show00(d.pi1_low(d.edges10[lo])));
      if (it == e10_by_pi0.end()) continue;
      for (size_t hi : it->second) {
        ++zfunc.cases;
        C11 lhs = d.z_d(d.star_low(d.edges10[hi], d.edges10[lo]));
        C11 rhs = d.star(d.z_d(d.edges10[hi]), d.z_d(d.edges10[lo]));
        if (!d.eq11(lhs, rhs))
          detail::record_failure(zfunc,
                                 "z_d over " + d.show10(d.edges10[hi]) + " * " +
                                     d.show10(d.edges10[lo]),
                                 d.show11(lhs), d.show11(rhs));
      }
    }
    std::map<std::string, std::vector<size_t>> e01_by_d0;
    for (size_t i = 0; i < d.edges01.size(); ++i)
      e01_by_d0[d.show00(d.d0_low(d.edges01[i]))].push_back(i);
    for (size_t inner = 0; inner < d.edges01.size(); ++inner) {
      auto it = e01_by_d0.find(d.show00(d.d1_low(d.edges01[inner])));
      if (it == e01_by_d0.end()) continue;
      for (size_t outer : it->second) {
        ++zfunc.cases;
        C11 lhs = d.z_pi(d.bullet_low(d.edges01[outer], d.edges01[inner]));
        C11 rhs = d.bullet(d.z_pi(d.edges01[outer]), d.z_pi(d.edges01[inner]));
        if (!d.eq11(lhs, rhs))
          detail::record_failure(zfunc,
                                 "z_pi over " + d.show01(d.edges01[outer]) + " . " +
                                     d.show01(d.edges01[inner]),
                                 d.show11(lhs), d.show11(rhs));
      }
    }
  }
  report.checks.push_back(std::move(zfunc));

  // (9) Interchange: on a composable 2x2 grid — (a,b) and (c,e) composable
  // under *, (a,c) and (b,e) composable under • — both (a*b)•(c*e) and
  // (a•c)*(b•e) are defined and equal. A side that fails to exist on a
  // composable grid is itself a counterexample, not a skip: that is how a
  // rescaling composition with the wrong scale arithmetic gets caught.
  CheckResult interchange{"interchange law", 0, 0, {}};
  {
    // Group *-composable pairs by the d-endpoints of their composite.
    std::map<std::string, std::vector<size_t>> pairs_by_comp_d1;
    std::vector<C11> star_comp;
    star_comp.reserve(star_pairs.size());
    for (const Pair& p : star_pairs) star_comp.push_back(d.star(d.cells[p.hi], d.cells[p.lo]));
    for (size_t i = 0; i < star_pairs.size(); ++i)
      pairs_by_comp_d1[d.show10(d.d1(star_comp[i]))].push_back(i);

    auto bullet_ok = [&](const C11& outer, const C11& inner) {
      return d.show10(d.d0(outer)) == d.show10(d.d1(inner));
    };

    for (size_t up = 0; up < star_pairs.size(); ++up) {
      auto it = pairs_by_comp_d1.find(d.show10(d.d0(star_comp[up])));
      if (it == pairs_by_comp_d1.end()) continue;
      const C11& a = d.cells[star_pairs[up].hi];
      const C11& b = d.cells[star_pairs[up].lo];
      for (size_t down : it->second) {
        const C11& c = d.cells[star_pairs[down].hi];
        const C11& e = d.cells[star_pairs[down].lo];
        if (!bullet_ok(a, c) || !bullet_ok(b, e)) continue;
        ++interchange.cases;
        std::string inputs = "a=" + d.show11(a) + " b=" + d.show11(b) + " c=" + d.show11(c) +
                             " d=" + d.show11(e);
        try {
          C11 lhs = d.bullet(star_comp[up], star_comp[down]);
          C11 rhs = d.star(d.bullet(a, c), d.bullet(b, e));
          if (!d.eq11(lhs, rhs))
            detail::record_failure(interchange, inputs, d.show11(lhs), d.show11(rhs));
        } catch (const std::exception& ex) {
          detail::record_failure(interchange, inputs, std::string("undefined: ") + ex.what(),
                                 "both sides defined and equal");
        }
      }
    }
  }
  report.checks.push_back(std::move(interchange));

  // Star-inversion as a morphism of the whole structure, when supplied.
  if (d.star_invert && d.star_invert_low) {
    CheckResult inv{"star-inversion intertwines the structure", 0, 0, {}};
    for (const C11& a : d.cells) {
      ++inv.cases;
      C11 ja = d.star_invert(a);
      bool ok = d.eq01(d.pi0(ja), d.pi1(a)) && d.eq01(d.pi1(ja), d.pi0(a)) &&
                d.eq10(d.d0(ja), d.star_invert_low(d.d0(a))) &&
                d.eq10(d.d1(ja), d.star_invert_low(d.d1(a)));
      if (!ok)
        detail::record_failure(inv, d.show11(a), d.show11(ja), "endpoint swap and d-intertwining");
    }
    for (const Pair& p : star_pairs) {
      ++inv.cases;
      const C11& hi = d.cells[p.hi];
      const C11& lo = d.cells[p.lo];
      C11 lhs = d.star_invert(d.star(hi, lo));
      C11 rhs = d.star(d.star_invert(lo), d.star_invert(hi));
      if (!d.eq11(lhs, rhs))
        detail::record_failure(inv, d.show11(hi) + " * " + d.show11(lo), d.show11(lhs),
                               d.show11(rhs));
    }
    for (const Pair& p : bullet_pairs) {
      ++inv.cases;
      const C11& outer = d.cells[p.hi];
      const C11& inner = d.cells[p.lo];
      C11 lhs = d.star_invert(d.bullet(outer, inner));
      C11 rhs = d.bullet(d.star_invert(outer), d.star_invert(inner));
      if (!d.eq11(lhs, rhs))
        detail::record_failure(inv, d.show11(outer) + " . " + d.show11(inner), d.show11(lhs),
                               d.show11(rhs));
    }
    report.checks.push_back(std::move(inv));
  }

  return report;
}

}  // namespace dg
