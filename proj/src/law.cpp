#include "dg/law.hpp"

namespace dg {

namespace {

// Environments binding point coordinates (and optionally directions/scale).
Env point_env(const std::vector<std::string>& names, const Vec& x) {
  Env env;
  for (size_t i = 0; i < names.size(); ++i) env.emplace(names[i], x[i]);
  return env;
}

ExprPtr linear_combination(const Ring& r, const Vec& coeffs,
                           const std::vector<std::string>& names) {
  ExprPtr acc;
  for (size_t j = 0; j < coeffs.size(); ++j) {
    if (r.is_zero(coeffs[j])) continue;
    mpq_class c = rational_representative(r, coeffs[j]);
    ExprPtr term = c == 1 ? make_var(names[j])
                          : make_binary('*', make_const(c), make_var(names[j]));
    acc = acc ? make_binary('+', acc, term) : term;
  }
  return acc ? acc : make_const(0);
}

void check_shapes(const LinearSetPtr& domain, const LinearSetPtr& codomain, size_t components) {
  if (!domain || !codomain) throw DomainError("law needs domain and codomain sets");
  if (domain->ring->describe() != codomain->ring->describe())
    throw DomainError("domain and codomain live over different rings");
  if (components != codomain->dim)
    throw DomainError("component count " + std::to_string(components) +
                      " does not match codomain dimension " + std::to_string(codomain->dim));
}

// Spot-check the defining identity on a fixed-seed handful of arrows; catches
// components whose denominators were not declared on the domain.
void verify_on_construction(const Law& law) {
  const Ring& r = *law.domain->ring;
  Sampler sampler(1);
  for (size_t i = 0; i < 32; ++i) {
    Arrow1 a{law.domain, {}, {}, r.zero()};
    try {
      a = sampler.sample_arrow1(law.domain);
    } catch (const DomainError&) {
      return;  // carrier too sparse to sample; later checks still apply
    }
    try {
      Vec xt = vec_add(r, a.x, vec_scale(r, a.v, a.t));
      Vec lhs = law_base_at(law, xt);
      Vec F = law_factorizer_at(law, a.x, a.v, a.t);
      Vec rhs = vec_add(r, law_base_at(law, a.x), vec_scale(r, F, a.t));
      if (!vec_eq(r, lhs, rhs))
        throw DomainError("difference identity fails at " + to_string(a));
    } catch (const DomainError& e) {
      throw DomainError("law construction check failed: " + std::string(e.what()));
    }
  }
}

}  // namespace

mpq_class rational_representative(const Ring& r, const RingElem& a) {
  switch (r.kind()) {
    case RingKind::Integers:
      return mpq_class(std::get<mpz_class>(a.payload()));
    case RingKind::Rationals:
      return std::get<mpq_class>(a.payload());
    case RingKind::ModN:
      return mpq_class(std::get<std::pair<mpz_class, mpz_class>>(a.payload()).first);
    case RingKind::Truncated:
      break;
  }
  throw DomainError("no rational representative for elements of " + r.describe());
}

Law constant_law(LinearSetPtr domain, LinearSetPtr codomain, const Vec& c) {
  check_shapes(domain, codomain, c.size());
  Law law;
  law.kind = "constant";
  const Ring& r = *codomain->ring;
  for (const RingElem& ci : c) law.base.push_back(make_const(rational_representative(r, ci)));
  for (size_t i = 0; i < c.size(); ++i) law.factorizer.push_back(make_const(0));
  law.domain = std::move(domain);
  law.codomain = std::move(codomain);
  return law;
}

Law linear_law(LinearSetPtr domain, LinearSetPtr codomain, const std::vector<Vec>& rows) {
  check_shapes(domain, codomain, rows.size());
  const Ring& r = *domain->ring;
  std::vector<std::string> vars = domain->var_names();
  std::vector<std::string> dirs = direction_var_names(vars);
  Law law;
  law.kind = "linear";
  for (const Vec& row : rows) {
    if (row.size() != domain->dim) throw DomainError("matrix row width mismatch");
    law.base.push_back(linear_combination(r, row, vars));
    law.factorizer.push_back(linear_combination(r, row, dirs));
  }
  law.domain = std::move(domain);
  law.codomain = std::move(codomain);
  return law;
}

Law affine_law(LinearSetPtr domain, LinearSetPtr codomain, const std::vector<Vec>& rows,
               const Vec& offset) {
  Law law = linear_law(std::move(domain), std::move(codomain), rows);
  law.kind = "affine";
  if (offset.size() != law.codomain->dim) throw DomainError("offset dimension mismatch");
  const Ring& r = *law.codomain->ring;
  for (size_t i = 0; i < offset.size(); ++i) {
    if (r.is_zero(offset[i])) continue;
    law.base[i] = make_binary('+', law.base[i], make_const(rational_representative(r, offset[i])));
  }
  return law;
}

Law identity_law(LinearSetPtr set) {
  const Ring& r = *set->ring;
  std::vector<Vec> rows;
  for (size_t i = 0; i < set->dim; ++i) {
    Vec row(set->dim, r.zero());
    row[i] = r.one();
    rows.push_back(std::move(row));
  }
  return linear_law(set, set, rows);
}

Law bilinear_law(LinearSetPtr domain, LinearSetPtr codomain,
                 const std::vector<std::vector<Vec>>& tensor) {
  check_shapes(domain, codomain, tensor.size());
  if (domain->kind != LinearSet::Kind::Product)
    throw DomainError("bilinear law needs a product domain");
  size_t m = domain->left->dim, n = domain->right->dim;
  const Ring& r = *domain->ring;
  std::vector<std::string> vars = domain->var_names();
  std::vector<std::string> dirs = direction_var_names(vars);
  Law law;
  law.kind = "bilinear";
  for (const auto& slice : tensor) {
    if (slice.size() != m) throw DomainError("tensor left arity mismatch");
    ExprPtr base, fact;
    for (size_t i = 0; i < m; ++i) {
      if (slice[i].size() != n) throw DomainError("tensor right arity mismatch");
      for (size_t j = 0; j < n; ++j) {
        if (r.is_zero(slice[i][j])) continue;
        mpq_class c = rational_representative(r, slice[i][j]);
        auto scaled = [&c](ExprPtr e) {
          return c == 1 ? e : make_binary('*', make_const(c), std::move(e));
        };
        ExprPtr bterm = scaled(make_binary('*', make_var(vars[i]), make_var(vars[m + j])));
        base = base ? make_binary('+', base, bterm) : bterm;
        // B(x, w) + B(u, y) + T * B(u, w) for point (x, y), direction (u, w).
        ExprPtr f1 = scaled(make_binary('*', make_var(vars[i]), make_var(dirs[m + j])));
        ExprPtr f2 = scaled(make_binary('*', make_var(dirs[i]), make_var(vars[m + j])));
        ExprPtr f3 = make_binary(
            '*', make_var("T"),
            scaled(make_binary('*', make_var(dirs[i]), make_var(dirs[m + j]))));
        ExprPtr fterm =
            make_binary('+', make_binary('+', std::move(f1), std::move(f2)), std::move(f3));
        fact = fact ? make_binary('+', fact, fterm) : fterm;
      }
    }
    law.base.push_back(base ? base : make_const(0));
    law.factorizer.push_back(fact ? fact : make_const(0));
  }
  law.domain = std::move(domain);
  law.codomain = std::move(codomain);
  return law;
}

Law polynomial_law(LinearSetPtr domain, LinearSetPtr codomain, std::vector<ExprPtr> components) {
  check_shapes(domain, codomain, components.size());
  std::vector<std::string> vars = domain->var_names();
  Law law;
  law.kind = "polynomial";
  for (const ExprPtr& e : components) {
    Fraction f = expr_to_fraction(e, vars);
    if (!f.is_polynomial())
      throw DomainError("component " + print_expr(e) +
                        " is not polynomial; declare its denominators instead");
    law.factorizer.push_back(symbolic_difference_factorizer(e, vars));
  }
  law.base = std::move(components);
  law.domain = std::move(domain);
  law.codomain = std::move(codomain);
  verify_on_construction(law);
  return law;
}

Law rational_law(RingPtr ring, size_t dim_in, size_t dim_out, std::vector<ExprPtr> components,
                 std::vector<ExprPtr> denominators) {
  if (components.size() != dim_out) throw DomainError("component count mismatch");
  LinearSetPtr domain = LinearSet::unit_denominators(ring, dim_in, std::move(denominators));
  LinearSetPtr codomain = LinearSet::whole(std::move(ring), dim_out);
  std::vector<std::string> vars = domain->var_names();
  Law law;
  law.kind = "rational";
  for (const ExprPtr& e : components)
    law.factorizer.push_back(symbolic_difference_factorizer(e, vars));
  law.base = std::move(components);
  law.domain = std::move(domain);
  law.codomain = std::move(codomain);
  verify_on_construction(law);
  return law;
}

Law law_on_domain(LinearSetPtr domain, LinearSetPtr codomain, std::vector<ExprPtr> components) {
  check_shapes(domain, codomain, components.size());
  std::vector<std::string> vars = domain->var_names();
  Law law;
  law.kind = "polynomial";
  for (const ExprPtr& e : components) {
    if (!expr_to_fraction(e, vars).is_polynomial()) law.kind = "rational";
    law.factorizer.push_back(symbolic_difference_factorizer(e, vars));
  }
  law.base = std::move(components);
  law.domain = std::move(domain);
  law.codomain = std::move(codomain);
  verify_on_construction(law);
  return law;
}

Law compose_laws(const Law& g, const Law& f) {
  if (!f.codomain || !g.domain) throw DomainError("laws are incomplete");
  if (f.codomain->ring->describe() != g.domain->ring->describe() ||
      f.codomain->dim != g.domain->dim)
    throw DomainError("codomain of the inner law does not match the outer domain: " +
                      f.codomain->describe() + " vs " + g.domain->describe());
  std::vector<std::string> g_vars = g.domain->var_names();
  std::vector<std::string> g_dirs = direction_var_names(g_vars);

  std::map<std::string, ExprPtr> base_images;
  for (size_t i = 0; i < g_vars.size(); ++i) base_images.emplace(g_vars[i], f.base[i]);

  std::map<std::string, ExprPtr> fact_images = base_images;
  for (size_t i = 0; i < g_dirs.size(); ++i) fact_images.emplace(g_dirs[i], f.factorizer[i]);
  // "T" maps to itself.

  Law law;
  law.kind = "composed";
  for (const ExprPtr& e : g.base) law.base.push_back(expr_substitute(e, base_images));
  for (const ExprPtr& e : g.factorizer) law.factorizer.push_back(expr_substitute(e, fact_images));
  law.domain = f.domain;
  law.codomain = g.codomain;
  return law;
}

bool law_equal(const Law& a, const Law& b) {
  if (a.domain->describe() != b.domain->describe() ||
      a.codomain->describe() != b.codomain->describe())
    return false;
  std::vector<std::string> vars = a.domain->var_names();
  std::vector<std::string> dirs = direction_var_names(vars);
  std::vector<std::string> ctx = vars;
  ctx.insert(ctx.end(), dirs.begin(), dirs.end());
  ctx.push_back("T");
  for (size_t i = 0; i < a.base.size(); ++i)
    if (!(expr_to_fraction(a.base[i], vars) == expr_to_fraction(b.base[i], vars))) return false;
  for (size_t i = 0; i < a.factorizer.size(); ++i)
    if (!(expr_to_fraction(a.factorizer[i], ctx) == expr_to_fraction(b.factorizer[i], ctx)))
      return false;
  return true;
}

bool laws_agree_pointwise(const Law& a, const Law& b, Sampler& sampler) {
  if (a.domain->describe() != b.domain->describe()) return false;
  const Ring& r = *a.domain->ring;
  for (size_t i = 0; i < 200; ++i) {
    Arrow1 ar = sampler.sample_arrow1(a.domain);
    if (!vec_eq(r, law_base_at(a, ar.x), law_base_at(b, ar.x))) return false;
    if (!vec_eq(r, law_factorizer_at(a, ar.x, ar.v, ar.t),
                law_factorizer_at(b, ar.x, ar.v, ar.t)))
      return false;
  }
  return true;
}

Vec law_base_at(const Law& law, const Vec& x) {
  const Ring& r = *law.domain->ring;
  Env env = point_env(law.domain->var_names(), x);
  Vec out;
  out.reserve(law.base.size());
  for (const ExprPtr& e : law.base) out.push_back(evaluate(e, env, r));
  return out;
}

Vec law_factorizer_at(const Law& law, const Vec& x, const Vec& v, const RingElem& t) {
  const Ring& r = *law.domain->ring;
  std::vector<std::string> vars = law.domain->var_names();
  std::vector<std::string> dirs = direction_var_names(vars);
  Env env = point_env(vars, x);
  for (size_t i = 0; i < dirs.size(); ++i) env.emplace(dirs[i], v[i]);
  env.emplace("T", t);
  Vec out;
  out.reserve(law.factorizer.size());
  for (const ExprPtr& e : law.factorizer) out.push_back(evaluate(e, env, r));
  return out;
}

Arrow1 apply1(const Law& law, const Arrow1& a) {
  return make_arrow1(law.codomain, law_base_at(law, a.x),
                     law_factorizer_at(law, a.x, a.v, a.t), a.t);
}

Arrow2 apply2(const Law& law, const Arrow2& a) {
  const Ring& r = *law.domain->ring;
  return make_arrow2(law.codomain, law_base_at(law, a.x),
                     law_factorizer_at(law, a.x, a.v, r.mul(a.s, a.t)), a.s, a.t);
}

std::pair<Vec, Vec> fiber_t(const Law& law, const RingElem& t, const Vec& x, const Vec& v) {
  return {law_base_at(law, x), law_factorizer_at(law, x, v, t)};
}

std::pair<Vec, Vec> tangent(const Law& law, const Vec& x, const Vec& v) {
  return fiber_t(law, law.domain->ring->zero(), x, v);
}

// ---- twist descriptors -----------------------------------------------------------

RingElem TwistDescriptor::apply(const Ring& r, const RingElem& a) const {
  switch (kind) {
    case Kind::Identity:
      return a;
    case Kind::UnitScaling:
      return r.mul(lambda, a);
    case Kind::Table: {
      auto it = table.find(r.to_string(a));
      if (it == table.end()) throw DomainError("twist table has no entry for " + r.to_string(a));
      return it->second;
    }
  }
  throw DomainError("unknown twist kind");
}

std::string TwistDescriptor::describe(const Ring& r) const {
  switch (kind) {
    case Kind::Identity:
      return "identity";
    case Kind::UnitScaling:
      return "scaling by " + r.to_string(lambda);
    case Kind::Table:
      return "table with " + std::to_string(table.size()) + " entries";
  }
  return "unknown";
}

TwistDescriptor TwistDescriptor::identity() { return TwistDescriptor{}; }

TwistDescriptor TwistDescriptor::unit_scaling(RingElem lambda) {
  TwistDescriptor d;
  d.kind = Kind::UnitScaling;
  d.lambda = std::move(lambda);
  return d;
}

TwistDescriptor TwistDescriptor::from_table(std::map<std::string, RingElem> table) {
  TwistDescriptor d;
  d.kind = Kind::Table;
  d.table = std::move(table);
  return d;
}

// ---- checking --------------------------------------------------------------------

namespace {

// Data feed for the relation checks. Exhaustive when |ring|^(3*dim+1) fits
// the budget (the widest relation quantifies over one point, two directions,
// and one scale); otherwise a fixed number of decorrelated seeded draws.
struct TupleFeed {
  std::vector<Vec> points;       // members of the domain set
  std::vector<Vec> vectors;      // unconstrained directions
  std::vector<RingElem> scalars;
  bool exhaustive = false;
};

TupleFeed make_feed(const LinearSetPtr& domain, Sampler& sampler) {
  TupleFeed feed;
  const Ring& r = *domain->ring;
  if (r.size() && prefer_exhaustive(r, 3 * domain->dim + 1)) {
    feed.exhaustive = true;
    feed.points = enumerate_points(domain);
    feed.vectors = enumerate_points(LinearSet::whole(domain->ring, domain->dim));
    feed.scalars = r.all_elements();
  } else {
    for (size_t i = 0; i < kSampleCount; ++i) {
      feed.points.push_back(sampler.sample_in(*domain));
      feed.vectors.push_back(sampler.sample_vec(r, domain->dim));
      feed.scalars.push_back(sampler.sample(r));
    }
  }
  return feed;
}

// Tuples (x, v, w, t): the full product over an exhaustive feed, decorrelated
// strides over a sampled one.
template <class Fn>
void for_each_xvwt(const TupleFeed& feed, Fn&& fn) {
  if (feed.exhaustive) {
    for (const Vec& x : feed.points)
      for (const Vec& v : feed.vectors)
        for (const Vec& w : feed.vectors)
          for (const RingElem& t : feed.scalars) fn(x, v, w, t);
  } else {
    size_t n = feed.points.size();
    for (size_t i = 0; i < n; ++i)
      fn(feed.points[i], feed.vectors[i], feed.vectors[(i * 7 + 3) % n],
         feed.scalars[i]);
  }
}

// Tuples (x, v, s, t).
template <class Fn>
void for_each_xvst(const TupleFeed& feed, Fn&& fn) {
  if (feed.exhaustive) {
    for (const Vec& x : feed.points)
      for (const Vec& v : feed.vectors)
        for (const RingElem& s : feed.scalars)
          for (const RingElem& t : feed.scalars) fn(x, v, s, t);
  } else {
    size_t n = feed.points.size();
    for (size_t i = 0; i < n; ++i)
      fn(feed.points[i], feed.vectors[i], feed.scalars[(i * 11 + 5) % n], feed.scalars[i]);
  }
}

std::string tuple_str(const Ring& r, const Vec& x, const Vec& v, const RingElem& t) {
  return "x=" + vec_to_string(r, x) + " v=" + vec_to_string(r, v) + " t=" + r.to_string(t);
}

}  // namespace

SuiteReport check_law_axioms(const Law& law, Sampler& sampler) {
  SuiteReport report;
  report.suite = "law axioms: " + law.kind;
  const Ring& r = *law.domain->ring;
  const LinearSet& U = *law.domain;
  TupleFeed feed = make_feed(law.domain, sampler);
  report.seed = feed.exhaustive ? 0 : sampler.seed();

  CheckResult identity{"difference identity", 0, 0, {}};
  CheckResult zero_dir{"zero direction maps to zero", 0, 0, {}};
  CheckResult additive{"factorizer additivity", 0, 0, {}};
  CheckResult homog{"factorizer homogeneity", 0, 0, {}};
  CheckResult star_f{"apply1 preserves star", 0, 0, {}};
  CheckResult bullet_f{"apply2 preserves bullet", 0, 0, {}};
  CheckResult zsec{"apply1 preserves zero sections", 0, 0, {}};
  CheckResult scaling{"apply1 commutes with rescaling", 0, 0, {}};

  for_each_xvwt(feed, [&](const Vec& x, const Vec& v, const Vec& w, const RingElem& t) {
    Vec xt = vec_add(r, x, vec_scale(r, v, t));
    if (!U.contains(xt)) return;

    ++identity.cases;
    Vec lhs = law_base_at(law, xt);
    Vec F = law_factorizer_at(law, x, v, t);
    Vec rhs = vec_add(r, law_base_at(law, x), vec_scale(r, F, t));
    if (!vec_eq(r, lhs, rhs))
      detail::record_failure(identity, tuple_str(r, x, v, t), vec_to_string(r, lhs),
                             vec_to_string(r, rhs));

    ++zero_dir.cases;
    Vec F0 = law_factorizer_at(law, x, vec_zero(r, U.dim), t);
    if (!vec_eq(r, F0, vec_zero(r, law.codomain->dim)))
      detail::record_failure(zero_dir, tuple_str(r, x, vec_zero(r, U.dim), t),
                             vec_to_string(r, F0), "0");

    ++zsec.cases;
    Arrow1 za = z_pi(law.domain, BasePoint1{x, t});
    Arrow1 img = apply1(law, za);
    Arrow1 want = z_pi(law.codomain, BasePoint1{law_base_at(law, x), t});
    if (!arrow_eq(img, want))
      detail::record_failure(zsec, tuple_str(r, x, vec_zero(r, U.dim), t), to_string(img),
                             to_string(want));

    Vec xtw = vec_add(r, x, vec_scale(r, vec_add(r, v, w), t));
    if (!U.contains(xtw)) return;

    ++additive.cases;
    Vec lhs2 = vec_add(r, law_factorizer_at(law, xt, w, t), F);
    Vec rhs2 = law_factorizer_at(law, x, vec_add(r, w, v), t);
    if (!vec_eq(r, lhs2, rhs2))
      detail::record_failure(additive, tuple_str(r, x, v, t) + " w=" + vec_to_string(r, w),
                             vec_to_string(r, lhs2), vec_to_string(r, rhs2));

    ++star_f.cases;
    Arrow1 lo{law.domain, x, v, t};
    Arrow1 hi{law.domain, xt, w, t};
    Arrow1 ahi = apply1(law, hi), alo = apply1(law, lo);
    if (!star_composable(ahi, alo)) {
      detail::record_failure(star_f, to_string(hi) + " * " + to_string(lo),
                             "images are not star-composable", "composable images");
    } else {
      Arrow1 lhs3 = apply1(law, compose_star(hi, lo));
      Arrow1 rhs3 = compose_star(ahi, alo);
      if (!arrow_eq(lhs3, rhs3))
        detail::record_failure(star_f, to_string(hi) + " * " + to_string(lo), to_string(lhs3),
                               to_string(rhs3));
    }
  });

  for_each_xvst(feed, [&](const Vec& x, const Vec& v, const RingElem& s, const RingElem& t) {
    RingElem st = r.mul(s, t);
    Vec xst = vec_add(r, x, vec_scale(r, v, st));
    if (!U.contains(xst)) return;

    ++homog.cases;
    Vec lhs = law_factorizer_at(law, x, vec_scale(r, v, s), t);
    Vec rhs = vec_scale(r, law_factorizer_at(law, x, v, st), s);
    if (!vec_eq(r, lhs, rhs))
      detail::record_failure(homog, tuple_str(r, x, v, t) + " s=" + r.to_string(s),
                             vec_to_string(r, lhs), vec_to_string(r, rhs));

    ++scaling.cases;
    Arrow1 a{law.domain, x, v, st};
    Arrow1 lhs4 = apply1(law, scaling_phi(s, t, a));
    Arrow1 rhs4 = scaling_phi(s, t, apply1(law, a));
    if (!arrow_eq(lhs4, rhs4))
      detail::record_failure(scaling, to_string(a) + " s=" + r.to_string(s), to_string(lhs4),
                             to_string(rhs4));
  });

  // Bullet functoriality needs a third scalar; widen only while the budget
  // allows, otherwise tie the outer scale to t.
  bool full_bullet = feed.exhaustive && prefer_exhaustive(r, 2 * U.dim + 3);
  for_each_xvst(feed, [&](const Vec& x, const Vec& v, const RingElem& s, const RingElem& t) {
    const std::vector<RingElem> outer_scales =
        full_bullet ? feed.scalars : std::vector<RingElem>{t};
    for (const RingElem& so : outer_scales) {
      RingElem ti = r.mul(so, t);  // inner scale, so the pair composes
      Vec endpoint = vec_add(r, x, vec_scale(r, v, r.mul(s, ti)));
      if (!U.contains(endpoint)) continue;
      ++bullet_f.cases;
      Arrow2 inner{law.domain, x, v, s, ti};
      Arrow2 outer{law.domain, x, vec_scale(r, v, s), so, t};
      Arrow2 aout = apply2(law, outer), ain = apply2(law, inner);
      if (!bullet_composable(aout, ain)) {
        detail::record_failure(bullet_f, to_string(outer) + " . " + to_string(inner),
                               "images are not bullet-composable", "composable images");
        continue;
      }
      Arrow2 lhs = apply2(law, compose_bullet(outer, inner));
      Arrow2 rhs = compose_bullet(aout, ain);
      if (!arrow_eq(lhs, rhs))
        detail::record_failure(bullet_f, to_string(outer) + " . " + to_string(inner),
                               to_string(lhs), to_string(rhs));
    }
  });

  report.checks = {std::move(identity), std::move(zero_dir), std::move(additive),
                   std::move(homog),    std::move(star_f),   std::move(bullet_f),
                   std::move(zsec),     std::move(scaling)};
  return report;
}

SuiteReport check_twisted_morphism(const Law& law, const TwistDescriptor& phi,
                                   const TwistDescriptor& psi, Sampler& sampler) {
  SuiteReport report;
  report.suite = "twisted morphism";
  const Ring& r = *law.domain->ring;
  const LinearSet& U = *law.domain;
  TupleFeed feed = make_feed(law.domain, sampler);
  report.seed = feed.exhaustive ? 0 : sampler.seed();

  auto ph = [&](const RingElem& a) { return phi.apply(r, a); };
  auto ps = [&](const RingElem& a) { return psi.apply(r, a); };

  CheckResult mult{"scale maps are unital, multiplicative, and compatible", 0, 0, {}};
  {
    ++mult.cases;
    if (!r.eq(ph(r.one()), r.one()))
      detail::record_failure(mult, "1", r.to_string(ph(r.one())), "1");
    auto check_pair = [&](const RingElem& s, const RingElem& t) {
      ++mult.cases;
      RingElem lhs1 = ph(r.mul(s, t));
      RingElem rhs1 = r.mul(ph(s), ph(t));
      RingElem lhs2 = ps(r.mul(s, t));
      RingElem rhs2 = r.mul(ph(s), ps(t));
      if (!r.eq(lhs1, rhs1) || !r.eq(lhs2, rhs2))
        detail::record_failure(mult, "s=" + r.to_string(s) + " t=" + r.to_string(t),
                               r.to_string(lhs1) + " / " + r.to_string(lhs2),
                               r.to_string(rhs1) + " / " + r.to_string(rhs2));
    };
    if (feed.exhaustive) {
      for (const RingElem& s : feed.scalars)
        for (const RingElem& t : feed.scalars) check_pair(s, t);
    } else {
      size_t n = feed.scalars.size();
      for (size_t i = 0; i < n; ++i) check_pair(feed.scalars[i], feed.scalars[(i * 7 + 3) % n]);
    }
  }
  report.checks.push_back(std::move(mult));

  CheckResult twisted{"twisted difference identity", 0, 0, {}};
  CheckResult additive{"factorizer additivity", 0, 0, {}};
  CheckResult homog{"twisted homogeneity", 0, 0, {}};
  CheckResult projections{"projections intertwine", 0, 0, {}};
  CheckResult star_f{"star preserved", 0, 0, {}};
  CheckResult bullet_f{"bullet preserved", 0, 0, {}};

  auto h = [&](const Arrow2& a) {
    return make_arrow2(law.codomain, law_base_at(law, a.x),
                       law_factorizer_at(law, a.x, a.v, r.mul(a.s, a.t)), ph(a.s), ps(a.t));
  };
  auto h_low = [&](const Arrow1& a) {
    return make_arrow1(law.codomain, law_base_at(law, a.x),
                       law_factorizer_at(law, a.x, a.v, a.t), ps(a.t));
  };

  for_each_xvst(feed, [&](const Vec& x, const Vec& v, const RingElem& s, const RingElem& t) {
    RingElem st = r.mul(s, t);
    Vec xst = vec_add(r, x, vec_scale(r, v, st));
    if (!U.contains(xst)) return;

    ++twisted.cases;
    Vec lhs = law_base_at(law, xst);
    Vec F = law_factorizer_at(law, x, v, st);
    Vec rhs = vec_add(r, law_base_at(law, x), vec_scale(r, F, r.mul(ph(s), ps(t))));
    if (!vec_eq(r, lhs, rhs))
      detail::record_failure(twisted, tuple_str(r, x, v, st) + " s=" + r.to_string(s),
                             vec_to_string(r, lhs), vec_to_string(r, rhs));

    ++homog.cases;
    Vec lhsh = law_factorizer_at(law, x, vec_scale(r, v, s), t);
    Vec rhsh = vec_scale(r, law_factorizer_at(law, x, v, st), ph(s));
    if (!vec_eq(r, lhsh, rhsh))
      detail::record_failure(homog, tuple_str(r, x, v, t) + " s=" + r.to_string(s),
                             vec_to_string(r, lhsh), vec_to_string(r, rhsh));

    ++projections.cases;
    Arrow2 a{law.domain, x, v, s, t};
    Arrow2 ha = h(a);
    BasePoint2 want0{law_base_at(law, x), ph(s), ps(t)};
    BasePoint2 want1{law_base_at(law, xst), ph(s), ps(t)};
    bool ok = base_eq(pi0(ha), want0, r) && base_eq(pi1(ha), want1, r) &&
              arrow_eq(partial0(ha), h_low(partial0(a))) &&
              arrow_eq(partial1(ha), h_low(partial1(a)));
    if (!ok)
      detail::record_failure(projections, to_string(a), to_string(ha),
                             "compatibility with all four projections");
  });

  // Star preservation quantifies over a second direction as well.
  bool full_star = feed.exhaustive && prefer_exhaustive(r, 3 * U.dim + 2);
  for_each_xvwt(feed, [&](const Vec& x, const Vec& v, const Vec& w, const RingElem& t) {
    const std::vector<RingElem> star_scales =
        full_star ? feed.scalars : std::vector<RingElem>{t};
    for (const RingElem& s : star_scales) {
      RingElem st = r.mul(s, t);
      Vec xst = vec_add(r, x, vec_scale(r, v, st));
      if (!U.contains(xst)) continue;
      Vec xw = vec_add(r, xst, vec_scale(r, w, st));
      if (!U.contains(xw)) continue;

      ++additive.cases;
      Vec lhs2 = vec_add(r, law_factorizer_at(law, xst, w, st),
                         law_factorizer_at(law, x, v, st));
      Vec rhs2 = law_factorizer_at(law, x, vec_add(r, w, v), st);
      if (!vec_eq(r, lhs2, rhs2))
        detail::record_failure(additive, tuple_str(r, x, v, st) + " w=" + vec_to_string(r, w),
                               vec_to_string(r, lhs2), vec_to_string(r, rhs2));

      ++star_f.cases;
      Arrow2 lo{law.domain, x, v, s, t};
      Arrow2 hi{law.domain, xst, w, s, t};
      Arrow2 hhi = h(hi), hlo = h(lo);
      if (!star_composable(hhi, hlo)) {
        detail::record_failure(star_f, to_string(hi) + " * " + to_string(lo),
                               "images are not star-composable", "composable images");
      } else {
        Arrow2 lhs3 = h(compose_star(hi, lo));
        Arrow2 rhs3 = compose_star(hhi, hlo);
        if (!arrow_eq(lhs3, rhs3))
          detail::record_failure(star_f, to_string(hi) + " * " + to_string(lo), to_string(lhs3),
                                 to_string(rhs3));
      }
    }
  });

  bool full_bullet = feed.exhaustive && prefer_exhaustive(r, 2 * U.dim + 3);
  for_each_xvst(feed, [&](const Vec& x, const Vec& v, const RingElem& s, const RingElem& t) {
    const std::vector<RingElem> outer_scales =
        full_bullet ? feed.scalars : std::vector<RingElem>{t};
    for (const RingElem& so : outer_scales) {
      RingElem ti = r.mul(so, t);
      Vec endpoint = vec_add(r, x, vec_scale(r, v, r.mul(s, ti)));
      if (!U.contains(endpoint)) continue;
      ++bullet_f.cases;
      Arrow2 inner{law.domain, x, v, s, ti};
      Arrow2 outer{law.domain, x, vec_scale(r, v, s), so, t};
      Arrow2 hout = h(outer), hin = h(inner);
      if (!bullet_composable(hout, hin)) {
        detail::record_failure(bullet_f, to_string(outer) + " . " + to_string(inner),
                               "images are not bullet-composable", "composable images");
        continue;
      }
      Arrow2 lhs = h(compose_bullet(outer, inner));
      Arrow2 rhs = compose_bullet(hout, hin);
      if (!arrow_eq(lhs, rhs))
        detail::record_failure(bullet_f, to_string(outer) + " . " + to_string(inner),
                               to_string(lhs), to_string(rhs));
    }
  });

  report.checks.push_back(std::move(twisted));
  report.checks.push_back(std::move(additive));
  report.checks.push_back(std::move(homog));
  report.checks.push_back(std::move(projections));
  report.checks.push_back(std::move(star_f));
  report.checks.push_back(std::move(bullet_f));
  return report;
}

// ---- level sets -------------------------------------------------------------------

bool LevelSet::contains(const Arrow2& a) const {
  const Ring& r = *law.domain->ring;
  if (!vec_eq(r, law_base_at(law, a.x), value)) return false;
  Vec F = law_factorizer_at(law, a.x, a.v, r.mul(a.s, a.t));
  return vec_eq(r, F, vec_zero(r, law.codomain->dim));
}

LevelSet level_set(Law law, Vec value) {
  if (value.size() != law.codomain->dim) throw DomainError("level value dimension mismatch");
  return LevelSet{std::move(law), std::move(value)};
}

SuiteReport check_level_set_closure(const LevelSet& ls, Sampler& sampler) {
  SuiteReport report;
  report.suite = "level set closure";
  const Ring& r = *ls.law.domain->ring;
  const LinearSetPtr& U = ls.law.domain;

  std::vector<Arrow2> members;
  if (r.size() && prefer_exhaustive(r, U->dim * 2 + 2)) {
    for (Arrow2& a : enumerate_arrow2(U))
      if (ls.contains(a)) members.push_back(std::move(a));
  } else {
    for (size_t i = 0; i < kSampleCount; ++i) {
      Arrow2 a = sampler.sample_arrow2(U);
      if (ls.contains(a)) members.push_back(std::move(a));
    }
    report.seed = sampler.seed();
  }

  CheckResult nonempty{"membership is not vacuous", 1, 0, {}};
  CheckResult star_closed{"closed under star", 0, 0, {}};
  CheckResult bullet_closed{"closed under bullet", 0, 0, {}};
  if (members.empty())
    detail::record_failure(nonempty, "level " + vec_to_string(r, ls.value), "no member arrows",
                           "at least one");

  for (const Arrow2& lo : members) {
    for (const Arrow2& hi : members) {
      if (star_composable(hi, lo)) {
        ++star_closed.cases;
        Arrow2 c = compose_star(hi, lo);
        if (!ls.contains(c))
          detail::record_failure(star_closed, to_string(hi) + " * " + to_string(lo), to_string(c),
                                 "a member of the level set");
      }
      if (bullet_composable(hi, lo)) {
        ++bullet_closed.cases;
        Arrow2 c = compose_bullet(hi, lo);
        if (!ls.contains(c))
          detail::record_failure(bullet_closed, to_string(hi) + " . " + to_string(lo),
                                 to_string(c), "a member of the level set");
      }
    }
  }
  report.checks = {std::move(nonempty), std::move(star_closed), std::move(bullet_closed)};
  return report;
}

// ---- pullback algebra ----------------------------------------------------------------

SuiteReport check_pullback_algebra(const RingPtr& base) {
  SuiteReport report;
  report.suite = "pullback algebra over " + base->describe();
  const Ring& r = *base;
  if (!r.size()) throw DomainError("pullback check needs a finite base ring");
  std::vector<RingElem> elems = r.all_elements();

  using Pt = std::pair<RingElem, RingElem>;  // an element (x, v) of the scaled extension
  auto add = [&](const Pt& a, const Pt& b) {
    return Pt{r.add(a.first, b.first), r.add(a.second, b.second)};
  };
  auto show = [&](const Pt& a) {
    return "(" + r.to_string(a.first) + "," + r.to_string(a.second) + ")";
  };
  auto eqp = [&](const Pt& a, const Pt& b) {
    return r.eq(a.first, b.first) && r.eq(a.second, b.second);
  };

  CheckResult closed{"composable pairs form a subalgebra", 0, 0, {}};
  CheckResult morphism{"star is an algebra morphism", 0, 0, {}};

  for (const RingElem& t : elems) {
    auto mul = [&](const Pt& a, const Pt& b) { return kt_mul(r, a, b, t); };
    // Composable pairs (hi, lo): hi.x = lo.x + t*lo.v.
    std::vector<std::pair<Pt, Pt>> pairs;
    for (const RingElem& x : elems)
      for (const RingElem& v : elems)
        for (const RingElem& vhi : elems)
          pairs.push_back({Pt{r.add(x, r.mul(t, v)), vhi}, Pt{x, v}});
    auto composable = [&](const Pt& hi, const Pt& lo) {
      return r.eq(hi.first, r.add(lo.first, r.mul(t, lo.second)));
    };
    auto star = [&](const Pt& hi, const Pt& lo) {
      return Pt{lo.first, r.add(hi.second, lo.second)};
    };

    ++closed.cases;
    Pt one{r.one(), r.zero()};
    if (!composable(one, one))
      detail::record_failure(closed, "unit at t=" + r.to_string(t), "not composable",
                             "composable");
    ++morphism.cases;
    if (!eqp(star(one, one), one))
      detail::record_failure(morphism, "unit at t=" + r.to_string(t), show(star(one, one)),
                             show(one));

    for (const auto& p : pairs) {
      for (const auto& q : pairs) {
        Pt sum_hi = add(p.first, q.first), sum_lo = add(p.second, q.second);
        Pt prod_hi = mul(p.first, q.first), prod_lo = mul(p.second, q.second);
        ++closed.cases;
        if (!composable(sum_hi, sum_lo) || !composable(prod_hi, prod_lo))
          detail::record_failure(closed,
                                 "p=(" + show(p.first) + "," + show(p.second) + ") q=(" +
                                     show(q.first) + "," + show(q.second) +
                                     ") t=" + r.to_string(t),
                                 "sum or product leaves the pullback", "closure");
        ++morphism.cases;
        Pt lhs_add = star(sum_hi, sum_lo);
        Pt rhs_add = add(star(p.first, p.second), star(q.first, q.second));
        Pt lhs_mul = star(prod_hi, prod_lo);
        Pt rhs_mul = mul(star(p.first, p.second), star(q.first, q.second));
        if (!eqp(lhs_add, rhs_add) || !eqp(lhs_mul, rhs_mul))
          detail::record_failure(morphism,
                                 "p=(" + show(p.first) + "," + show(p.second) + ") q=(" +
                                     show(q.first) + "," + show(q.second) +
                                     ") t=" + r.to_string(t),
                                 show(lhs_add) + " / " + show(lhs_mul),
                                 show(rhs_add) + " / " + show(rhs_mul));
      }
    }
  }
  report.checks = {std::move(closed), std::move(morphism)};
  return report;
}

}  // namespace dg
