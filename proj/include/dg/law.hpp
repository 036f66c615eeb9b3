// Maps with a chosen difference factorizer: a law is a map f together with
// expressions F satisfying f(x + v*t) = f(x) + F(x,v,t)*t, acting on arrows by
//   apply1: (x, v; t)    -> (f(x), F(x,v,t); t)
//   apply2: (x, v; s, t) -> (f(x), F(x,v,s*t); s, t)
// Constructors synthesize F symbolically; the checking entry points verify
// the factorizer relations and functoriality over enumerated or sampled data.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "dg/checker.hpp"
#include "dg/expr.hpp"
#include "dg/prolong.hpp"
#include "dg/sampler.hpp"

namespace dg {

struct Law {
  LinearSetPtr domain, codomain;
  // Component expressions of f, in the domain's variables.
  std::vector<ExprPtr> base;
  // Component expressions of F, in (domain vars, direction vars, "T").
  std::vector<ExprPtr> factorizer;
  std::string kind;  // "constant", "linear", "affine", "bilinear", "polynomial", "rational", "composed"
};

// Canonical rational representative of a ring element, for embedding ring
// constants into expressions (integers, rationals, residues; truncated
// elements have no such representative).
mpq_class rational_representative(const Ring& r, const RingElem& a);

Law constant_law(LinearSetPtr domain, LinearSetPtr codomain, const Vec& c);
// rows[i][j] multiplies x_j in output component i.
Law linear_law(LinearSetPtr domain, LinearSetPtr codomain,
               const std::vector<Vec>& rows);
Law affine_law(LinearSetPtr domain, LinearSetPtr codomain, const std::vector<Vec>& rows,
               const Vec& offset);
Law identity_law(LinearSetPtr set);
// Domain must be a product set; tensor[k][i][j] multiplies (left_i, right_j)
// in output component k. Factorizer: B(x, w) + B(u, y) + T*B(u, w) for
// direction (u, w) at point (x, y).
Law bilinear_law(LinearSetPtr domain, LinearSetPtr codomain,
                 const std::vector<std::vector<Vec>>& tensor);
Law polynomial_law(LinearSetPtr domain, LinearSetPtr codomain, std::vector<ExprPtr> components);
// Components may divide; `denominators` lists the subexpressions that must be
// units, and the returned law's domain is the corresponding unit-denominator
// set over ring^dim.
Law rational_law(RingPtr ring, size_t dim_in, size_t dim_out, std::vector<ExprPtr> components,
                 std::vector<ExprPtr> denominators);
// A law from explicit component expressions over a given domain; components
// may carry denominators as long as the domain keeps them invertible.
Law law_on_domain(LinearSetPtr domain, LinearSetPtr codomain, std::vector<ExprPtr> components);
// g after f; requires codomain(f) and domain(g) to agree.
Law compose_laws(const Law& g, const Law& f);

// Structural equality: same domain/codomain descriptions and equal normal-form
// fractions for every base and factorizer component.
bool law_equal(const Law& a, const Law& b);
// Pointwise agreement of base and factorizer values on sampled arrows; coarser
// than law_equal.
bool laws_agree_pointwise(const Law& a, const Law& b, Sampler& sampler);

Vec law_base_at(const Law& law, const Vec& x);
Vec law_factorizer_at(const Law& law, const Vec& x, const Vec& v, const RingElem& t);

Arrow1 apply1(const Law& law, const Arrow1& a);
Arrow2 apply2(const Law& law, const Arrow2& a);

// The induced map on the t-fiber: x ↦ f(x), v ↦ F(x, v, t). At t = 0 this is
// the tangent map.
std::pair<Vec, Vec> fiber_t(const Law& law, const RingElem& t, const Vec& x, const Vec& v);
std::pair<Vec, Vec> tangent(const Law& law, const Vec& x, const Vec& v);

// Verifies the factorizer relations and functoriality of apply1/apply2:
// the difference identity, vanishing at zero direction, additivity,
// homogeneity under rescaling, zero-section and scaling compatibility, and
// star/bullet preservation. Exhaustive over finite rings within budget,
// sampled otherwise.
SuiteReport check_law_axioms(const Law& law, Sampler& sampler);

// A unital multiplicative self-map of the scalars, used to twist the scale
// coordinates of a morphism.
struct TwistDescriptor {
  enum class Kind { Identity, UnitScaling, Table };
  Kind kind = Kind::Identity;
  RingElem lambda;                        // UnitScaling: a -> lambda * a
  std::map<std::string, RingElem> table;  // Table: keyed by Ring::to_string

  RingElem apply(const Ring& r, const RingElem& a) const;
  std::string describe(const Ring& r) const;

  static TwistDescriptor identity();
  static TwistDescriptor unit_scaling(RingElem lambda);
  static TwistDescriptor from_table(std::map<std::string, RingElem> table);
};

// Verifies that (x,v;s,t) -> (f(x), F(x,v,s*t); phi(s), psi(t)) is a morphism
// of the second prolongation structures: the twisted difference identity,
// multiplicativity/compatibility of phi and psi, additivity and homogeneity
// of F, and direct star/bullet/projection preservation.
SuiteReport check_twisted_morphism(const Law& law, const TwistDescriptor& phi,
                                   const TwistDescriptor& psi, Sampler& sampler);

// The level set of a law at value c: arrows (x,v;s,t) with f(x) = c and
// F(x,v,s*t) = 0. Closed under both compositions.
struct LevelSet {
  Law law;
  Vec value;
  bool contains(const Arrow2& a) const;
};
LevelSet level_set(Law law, Vec value);
SuiteReport check_level_set_closure(const LevelSet& ls, Sampler& sampler);

// Composable pairs of K_t-points form a subalgebra of the product, and the
// star composition (x', v') * (x, v) = (x, v' + v) is an algebra morphism
// onto K_t; exhaustive over a finite base ring, all t.
SuiteReport check_pullback_algebra(const RingPtr& base);

}  // namespace dg
