#include "dg/manifold.hpp"

#include <optional>
#include <utility>

namespace dg {

namespace {

void absorb(SuiteReport& report, SuiteReport sub, const std::string& prefix) {
  if (report.seed == 0) report.seed = sub.seed;
  for (CheckResult& c : sub.checks) {
    c.name = prefix + c.name;
    report.checks.push_back(std::move(c));
  }
}

std::string chart_label(size_t i) { return "chart " + std::to_string(i + 1); }

std::string pair_label(size_t i, size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

void require_chart(const GluingPtr& g, size_t chart) {
  if (!g) throw DomainError("gluing data is missing");
  if (chart >= g->charts())
    throw DomainError(chart_label(chart) + " is out of range; the gluing declares " +
                      std::to_string(g->charts()) + " charts");
}

// Whether the transition i <- j can move points at all.
bool glued(const GluingData& g, size_t i, size_t j) {
  return g.overlap[j][i] && g.transition[i][j].domain != nullptr;
}

// The diagonal transition must be x -> x with factorizer v, whatever set
// instances it was declared over.
bool is_identity_transition(const Law& phi, size_t dim) {
  if (!phi.domain || phi.base.size() != dim || phi.factorizer.size() != dim) return false;
  std::vector<std::string> vars = phi.domain->var_names();
  std::vector<std::string> dirs = direction_var_names(vars);
  std::vector<std::string> ctx = vars;
  ctx.insert(ctx.end(), dirs.begin(), dirs.end());
  ctx.push_back("T");
  for (size_t c = 0; c < dim; ++c) {
    if (!(expr_to_fraction(phi.base[c], vars) == expr_to_fraction(make_var(vars[c]), vars)))
      return false;
    if (!(expr_to_fraction(phi.factorizer[c], ctx) == expr_to_fraction(make_var(dirs[c]), ctx)))
      return false;
  }
  return true;
}

}  // namespace

GluingPtr seal_gluing(GluingData g) {
  if (!g.ring) throw DomainError("gluing data needs a ring");
  if (g.dim == 0) throw DomainError("gluing data needs a positive dimension");
  if (g.chart.empty()) throw DomainError("gluing data needs at least one chart");
  const size_t n = g.chart.size();
  for (size_t i = 0; i < n; ++i) {
    if (!g.chart[i]) throw DomainError(chart_label(i) + " is missing");
    if (g.chart[i]->dim != g.dim || g.chart[i]->ring->describe() != g.ring->describe())
      throw DomainError(chart_label(i) + " does not live over " + g.ring->describe() +
                        " in dimension " + std::to_string(g.dim));
  }
  g.overlap.resize(n);
  g.transition.resize(n);
  for (size_t i = 0; i < n; ++i) {
    g.overlap[i].resize(n);
    g.transition[i].resize(n);
  }
  for (size_t i = 0; i < n; ++i) {
    if (!g.overlap[i][i]) g.overlap[i][i] = g.chart[i];
    if (!g.transition[i][i].domain) g.transition[i][i] = identity_law(g.chart[i]);
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      bool has_overlap = g.overlap[i][j] != nullptr;
      // transition[j][i] consumes chart-i coordinates on overlap[i][j]
      bool has_law = g.transition[j][i].domain != nullptr;
      if (has_overlap != has_law)
        throw DomainError("charts " + pair_label(i, j) +
                          ": overlap and transition must be declared together");
      if (has_overlap != (g.overlap[j][i] != nullptr))
        throw DomainError("charts " + pair_label(i, j) +
                          ": overlaps must be declared in both directions");
      if (has_overlap && (g.overlap[i][j]->dim != g.dim ||
                          g.overlap[i][j]->ring->describe() != g.ring->describe()))
        throw DomainError("overlap " + pair_label(i, j) + " does not match the gluing shape");
    }
  return std::make_shared<const GluingData>(std::move(g));
}

GluingPtr projective_line(RingPtr ring) {
  GluingData g;
  g.ring = ring;
  g.dim = 1;
  g.chart = {LinearSet::whole(ring, 1), LinearSet::whole(ring, 1)};
  g.overlap.assign(2, std::vector<LinearSetPtr>(2));
  g.transition.assign(2, std::vector<Law>(2));
  g.overlap[0][1] = LinearSet::unit_denominators(ring, 1, {make_var("x")});
  g.overlap[1][0] = LinearSet::unit_denominators(ring, 1, {make_var("x")});
  Law reciprocal = rational_law(ring, 1, 1, {parse_expr("1 / x")}, {make_var("x")});
  g.transition[0][1] = reciprocal;
  g.transition[1][0] = std::move(reciprocal);
  return seal_gluing(std::move(g));
}

ManifoldPoint make_point(const GluingPtr& g, size_t chart, Vec x) {
  require_chart(g, chart);
  if (!g->chart[chart]->contains(x))
    throw DomainError(vec_to_string(*g->ring, x) + " is not in " + chart_label(chart) + ": " +
                      g->chart[chart]->describe());
  return ManifoldPoint{chart, std::move(x)};
}

ManifoldArrow make_manifold_arrow(const GluingPtr& g, size_t chart, Vec x, Vec v, RingElem t) {
  require_chart(g, chart);
  return ManifoldArrow{chart,
                       make_arrow1(g->chart[chart], std::move(x), std::move(v), std::move(t))};
}

ManifoldCell make_manifold_cell(const GluingPtr& g, size_t chart, Vec x, Vec v, RingElem s,
                                RingElem t) {
  require_chart(g, chart);
  return ManifoldCell{chart, make_arrow2(g->chart[chart], std::move(x), std::move(v),
                                         std::move(s), std::move(t))};
}

std::string to_string(const GluingData& g, const ManifoldPoint& p) {
  return "(" + chart_label(p.chart) + ", " + vec_to_string(*g.ring, p.x) + ")";
}

std::string to_string(const GluingData& g, const ManifoldArrow& a) {
  (void)g;
  return "(" + chart_label(a.chart) + ", " + to_string(a.arrow) + ")";
}

bool same_point(const GluingPtr& g, const ManifoldPoint& p, const ManifoldPoint& q) {
  require_chart(g, p.chart);
  require_chart(g, q.chart);
  const Ring& r = *g->ring;
  if (p.chart == q.chart) return vec_eq(r, p.x, q.x);
  if (!glued(*g, p.chart, q.chart)) return false;
  if (!g->overlap[q.chart][p.chart]->contains(q.x)) return false;
  try {
    return vec_eq(r, law_base_at(g->transition[p.chart][q.chart], q.x), p.x);
  } catch (const DomainError&) {
    return false;
  }
}

ManifoldPoint transport_point(const GluingPtr& g, const ManifoldPoint& p, size_t to_chart) {
  require_chart(g, p.chart);
  require_chart(g, to_chart);
  if (to_chart == p.chart) return p;
  const LinearSetPtr& over = g->overlap[p.chart][to_chart];
  if (!over || !over->contains(p.x))
    throw DomainError(to_string(*g, p) + " is not representable in " + chart_label(to_chart));
  Vec y = law_base_at(g->transition[to_chart][p.chart], p.x);
  if (!g->chart[to_chart]->contains(y))
    throw DomainError("transition image " + vec_to_string(*g->ring, y) + " leaves " +
                      chart_label(to_chart));
  return ManifoldPoint{to_chart, std::move(y)};
}

ManifoldArrow transport_arrow(const GluingPtr& g, const ManifoldArrow& a, size_t to_chart) {
  require_chart(g, a.chart);
  require_chart(g, to_chart);
  if (to_chart == a.chart) return a;
  const Ring& r = *g->ring;
  const LinearSetPtr& over = g->overlap[a.chart][to_chart];
  Vec endpoint = vec_add(r, a.arrow.x, vec_scale(r, a.arrow.v, a.arrow.t));
  if (!over || !over->contains(a.arrow.x) || !over->contains(endpoint))
    throw DomainError("the footprint of " + to_string(*g, a) + " is not in the overlap toward " +
                      chart_label(to_chart));
  const Law& phi = g->transition[to_chart][a.chart];
  Vec y = law_base_at(phi, a.arrow.x);
  Vec w = law_factorizer_at(phi, a.arrow.x, a.arrow.v, a.arrow.t);
  return ManifoldArrow{to_chart,
                       make_arrow1(g->chart[to_chart], std::move(y), std::move(w), a.arrow.t)};
}

ManifoldPoint canonicalize(const GluingPtr& g, const ManifoldPoint& p) {
  require_chart(g, p.chart);
  for (size_t c = 0; c < g->charts(); ++c) {
    if (c == p.chart) return p;
    try {
      return transport_point(g, p, c);
    } catch (const DomainError&) {
    }
  }
  return p;
}

ManifoldPoint m1_source(const GluingPtr& g, const ManifoldArrow& a) {
  return canonicalize(g, ManifoldPoint{a.chart, pi0(a.arrow).x});
}

ManifoldPoint m1_target(const GluingPtr& g, const ManifoldArrow& a) {
  return canonicalize(g, ManifoldPoint{a.chart, pi1(a.arrow).x});
}

bool same_arrow(const GluingPtr& g, const ManifoldArrow& a, const ManifoldArrow& b) {
  require_chart(g, a.chart);
  require_chart(g, b.chart);
  if (!g->ring->eq(a.arrow.t, b.arrow.t)) return false;
  for (size_t c = 0; c < g->charts(); ++c) {
    std::optional<Arrow1> ta, tb;
    try {
      ta = transport_arrow(g, a, c).arrow;
      tb = transport_arrow(g, b, c).arrow;
    } catch (const DomainError&) {
      continue;
    }
    return arrow_eq(*ta, *tb);
  }
  return false;
}

ManifoldArrow m1_compose(const GluingPtr& g, const ManifoldArrow& a, const ManifoldArrow& b) {
  require_chart(g, a.chart);
  require_chart(g, b.chart);
  const Ring& r = *g->ring;
  if (!r.eq(a.arrow.t, b.arrow.t))
    throw DomainError("arrows carry different parameters: " + r.to_string(a.arrow.t) + " vs " +
                      r.to_string(b.arrow.t));
  ManifoldPoint end_a{a.chart, pi1(a.arrow).x};
  ManifoldPoint start_b{b.chart, pi0(b.arrow).x};
  if (!same_point(g, start_b, end_a))
    throw DomainError("arrows do not meet: " + to_string(*g, a) + " ends at " +
                      to_string(*g, end_a) + " but " + to_string(*g, b) + " starts at " +
                      to_string(*g, start_b));
  for (size_t c = 0; c < g->charts(); ++c) {
    std::optional<Arrow1> lo, hi;
    try {
      lo = transport_arrow(g, a, c).arrow;
      hi = transport_arrow(g, b, c).arrow;
    } catch (const DomainError&) {
      continue;
    }
    if (!star_composable(*hi, *lo)) continue;
    return ManifoldArrow{c, compose_star(*hi, *lo)};
  }
  throw DomainError("the pair is not handy: no declared chart contains the footprints of both " +
                    to_string(*g, a) + " and " + to_string(*g, b));
}

ManifoldCell m2_compose_local(const GluingPtr& g, const ManifoldCell& outer,
                              const ManifoldCell& inner) {
  require_chart(g, outer.chart);
  require_chart(g, inner.chart);
  if (outer.chart != inner.chart)
    throw DomainError("second-level composition is only defined within a single chart, got " +
                      chart_label(outer.chart) + " and " + chart_label(inner.chart));
  return ManifoldCell{outer.chart, compose_bullet(outer.cell, inner.cell)};
}

SuiteReport validate_gluing(const GluingPtr& g, Sampler& sampler) {
  if (!g) throw DomainError("gluing data is missing");
  const Ring& r = *g->ring;
  const size_t n = g->charts();
  SuiteReport report;
  report.suite = "gluing of " + std::to_string(n) + " charts over " + r.describe();

  CheckResult shapes{"overlaps and transitions are well-shaped", 0, 0, {}};
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      ++shapes.cases;
      const LinearSetPtr& over = g->overlap[i][j];
      const Law& phi = g->transition[j][i];  // consumes chart-i coordinates
      if ((over != nullptr) != (phi.domain != nullptr)) {
        detail::record_failure(shapes, "charts " + pair_label(i, j),
                               over ? "overlap without transition" : "transition without overlap",
                               "both or neither");
        continue;
      }
      if (!over) continue;
      if (!g->overlap[j][i]) {
        detail::record_failure(shapes, "charts " + pair_label(i, j), "one-sided overlap",
                               "declared in both directions");
        continue;
      }
      if (over->dim != g->dim || phi.base.size() != g->dim || phi.factorizer.size() != g->dim)
        detail::record_failure(shapes, "charts " + pair_label(i, j), "dimension mismatch",
                               std::to_string(g->dim) + " components");
    }
  report.checks.push_back(std::move(shapes));

  CheckResult diag{"diagonal transitions are the identity", 0, 0, {}};
  for (size_t i = 0; i < n; ++i) {
    ++diag.cases;
    bool ok = false;
    std::string lhs = "missing transition";
    try {
      ok = is_identity_transition(g->transition[i][i], g->dim);
      if (!ok && g->transition[i][i].domain) {
        lhs.clear();
        for (const ExprPtr& e : g->transition[i][i].base)
          lhs += (lhs.empty() ? "" : ", ") + print_expr(e);
      }
    } catch (const DomainError& e) {
      lhs = e.what();
    }
    if (!ok) detail::record_failure(diag, chart_label(i), lhs, "the identity law");
  }
  report.checks.push_back(std::move(diag));

  // Points to feed the cocycle relation, per chart.
  bool exhaustive = r.size() && prefer_exhaustive(r, g->dim);
  std::vector<std::vector<Vec>> pts(n);
  for (size_t i = 0; i < n; ++i) {
    if (exhaustive) {
      pts[i] = enumerate_points(g->chart[i]);
    } else {
      report.seed = sampler.seed();
      pts[i].reserve(kSampleCount);
      for (size_t k = 0; k < kSampleCount; ++k) pts[i].push_back(sampler.sample_in(*g->chart[i]));
    }
  }

  CheckResult cocycle{"cocycle relations hold on triple overlaps", 0, 0, {}};
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        if (!glued(*g, j, k) || !glued(*g, i, j) || !glued(*g, i, k)) continue;
        for (const Vec& x : pts[k]) {
          if (!g->overlap[k][j]->contains(x) || !g->overlap[k][i]->contains(x)) continue;
          Vec y, via, direct;
          try {
            y = law_base_at(g->transition[j][k], x);
            if (!g->overlap[j][i]->contains(y)) continue;
            via = law_base_at(g->transition[i][j], y);
            direct = law_base_at(g->transition[i][k], x);
          } catch (const DomainError&) {
            continue;
          }
          ++cocycle.cases;
          if (!vec_eq(r, via, direct))
            detail::record_failure(
                cocycle,
                "i=" + std::to_string(i) + " j=" + std::to_string(j) + " k=" + std::to_string(k) +
                    " x=" + vec_to_string(r, x),
                vec_to_string(r, via), vec_to_string(r, direct));
        }
      }
  report.checks.push_back(std::move(cocycle));

  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (!g->transition[i][j].domain) continue;
      absorb(report, check_law_axioms(g->transition[i][j], sampler),
             "transition " + pair_label(i, j) + ": ");
    }
  return report;
}

ManifoldLaw make_manifold_law(GluingPtr source, GluingPtr target,
                              std::vector<std::vector<std::optional<Law>>> pieces) {
  if (!source || !target) throw DomainError("a manifold law needs both gluings");
  if (source->ring->describe() != target->ring->describe())
    throw DomainError("source and target gluings live over different rings: " +
                      source->ring->describe() + " vs " + target->ring->describe());
  const size_t nt = target->charts(), ns = source->charts();
  pieces.resize(nt);
  for (auto& row : pieces) row.resize(ns);

  ManifoldLaw ml;
  ml.provided.assign(nt, std::vector<char>(ns, 0));
  size_t given = 0;
  for (size_t i = 0; i < nt; ++i)
    for (size_t j = 0; j < ns; ++j) {
      if (!pieces[i][j]) continue;
      const Law& f = *pieces[i][j];
      if (!f.domain || !f.codomain) throw DomainError("piece " + pair_label(i, j) + " is empty");
      if (f.domain->dim != source->dim || f.codomain->dim != target->dim ||
          f.domain->ring->describe() != source->ring->describe())
        throw DomainError("piece " + pair_label(i, j) + " has the wrong shape: " +
                          f.domain->describe() + " -> " + f.codomain->describe());
      ml.provided[i][j] = 1;
      ++given;
    }
  if (given == 0) throw DomainError("a manifold law needs at least one piece");

  // Induce the missing pieces by conjugating a given one with the transitions:
  // piece[k][l] = transition'[k][i] o piece[i][j] o transition[j][l].
  std::vector<std::pair<size_t, size_t>> donors;
  for (size_t i = 0; i < nt; ++i)
    for (size_t j = 0; j < ns; ++j)
      if (ml.provided[i][j]) donors.emplace_back(i, j);
  for (size_t k = 0; k < nt; ++k)
    for (size_t l = 0; l < ns; ++l) {
      if (pieces[k][l]) continue;
      for (const auto& [i, j] : donors) {
        if (!target->transition[k][i].domain || !source->transition[j][l].domain) continue;
        try {
          pieces[k][l] = compose_laws(target->transition[k][i],
                                      compose_laws(*pieces[i][j], source->transition[j][l]));
          break;
        } catch (const DomainError&) {
        }
      }
    }

  ml.source = std::move(source);
  ml.target = std::move(target);
  ml.piece = std::move(pieces);
  return ml;
}

ManifoldArrow manifold_apply1(const ManifoldLaw& ml, const ManifoldArrow& a) {
  for (size_t j = 0; j < ml.source->charts(); ++j) {
    std::optional<Arrow1> local;
    try {
      local = transport_arrow(ml.source, a, j).arrow;
    } catch (const DomainError&) {
      continue;
    }
    for (size_t i = 0; i < ml.target->charts(); ++i) {
      if (!ml.piece[i][j]) continue;
      try {
        Vec y = law_base_at(*ml.piece[i][j], local->x);
        Vec w = law_factorizer_at(*ml.piece[i][j], local->x, local->v, local->t);
        return ManifoldArrow{i,
                             make_arrow1(ml.target->chart[i], std::move(y), std::move(w),
                                         local->t)};
      } catch (const DomainError&) {
      }
    }
  }
  throw DomainError("no piece of the law accepts " + to_string(*ml.source, a));
}

SuiteReport check_manifold_law(const ManifoldLaw& ml, Sampler& sampler) {
  if (!ml.source || !ml.target) throw DomainError("a manifold law needs both gluings");
  const Ring& r = *ml.source->ring;
  const size_t nt = ml.target->charts(), ns = ml.source->charts();
  SuiteReport report;
  report.suite = "manifold law over " + r.describe();

  CheckResult coverage{"every chart pair carries a piece", 0, 0, {}};
  for (size_t i = 0; i < nt; ++i)
    for (size_t j = 0; j < ns; ++j) {
      ++coverage.cases;
      if (!ml.piece[i][j])
        detail::record_failure(coverage, "piece " + pair_label(i, j),
                               "neither given nor induced from the transitions", "a law");
    }
  report.checks.push_back(std::move(coverage));

  // Arrows to feed the compatibility equations, per source chart.
  bool exhaustive = r.size() && prefer_exhaustive(r, 2 * ml.source->dim + 1);
  std::vector<std::vector<Arrow1>> arrows(ns);
  for (size_t l = 0; l < ns; ++l) {
    if (exhaustive) {
      arrows[l] = enumerate_arrow1(ml.source->chart[l]);
    } else {
      report.seed = sampler.seed();
      arrows[l].reserve(kSampleCount / 5);
      for (size_t k = 0; k < kSampleCount / 5; ++k)
        arrows[l].push_back(sampler.sample_arrow1(ml.source->chart[l]));
    }
  }

  // piece[k][l] agrees with transition'[k][i] o piece[i][j] o transition[j][l]
  // wherever both sides are defined, checked on whole arrows so the factorizer
  // components are covered too.
  CheckResult compat{"pieces agree across the overlaps", 0, 0, {}};
  size_t comparable_pairs = 0;
  for (size_t k = 0; k < nt; ++k)
    for (size_t l = 0; l < ns; ++l) {
      if (!ml.piece[k][l]) continue;
      for (size_t i = 0; i < nt; ++i)
        for (size_t j = 0; j < ns; ++j) {
          if (!ml.piece[i][j] || (i == k && j == l)) continue;
          ++comparable_pairs;
          for (const Arrow1& a : arrows[l]) {
            std::optional<Arrow1> via, direct;
            try {
              ManifoldArrow in_j = transport_arrow(ml.source, ManifoldArrow{l, a}, j);
              Vec y = law_base_at(*ml.piece[i][j], in_j.arrow.x);
              Vec w = law_factorizer_at(*ml.piece[i][j], in_j.arrow.x, in_j.arrow.v,
                                        in_j.arrow.t);
              ManifoldArrow image{i, make_arrow1(ml.target->chart[i], std::move(y), std::move(w),
                                                 in_j.arrow.t)};
              via = transport_arrow(ml.target, image, k).arrow;
            } catch (const DomainError&) {
              continue;
            }
            try {
              Vec y = law_base_at(*ml.piece[k][l], a.x);
              Vec w = law_factorizer_at(*ml.piece[k][l], a.x, a.v, a.t);
              direct = make_arrow1(ml.target->chart[k], std::move(y), std::move(w), a.t);
            } catch (const DomainError&) {
              continue;
            }
            ++compat.cases;
            if (!arrow_eq(*via, *direct))
              detail::record_failure(compat,
                                     "piece " + pair_label(k, l) + " vs " + pair_label(i, j) +
                                         " via " + to_string(a),
                                     to_string(*via), to_string(*direct));
          }
        }
    }
  if (compat.cases == 0 && comparable_pairs > 0)
    detail::record_failure(compat, "sampling", "no sample landed in a shared domain",
                           "at least one comparable arrow");
  report.checks.push_back(std::move(compat));

  for (size_t i = 0; i < nt; ++i)
    for (size_t j = 0; j < ns; ++j) {
      if (!ml.piece[i][j] || !ml.provided[i][j]) continue;
      absorb(report, check_law_axioms(*ml.piece[i][j], sampler),
             "piece " + pair_label(i, j) + ": ");
    }
  return report;
}

}  // namespace dg
