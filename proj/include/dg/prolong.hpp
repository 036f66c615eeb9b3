// First and second prolongation spaces of a linearly-structured subset U of
// K^d. A first-level arrow (x, v; t) connects x to x + v*t; a second-level
// arrow (x, v; s, t) carries two scale parameters and supports two
// compositions: * (same scales, concatenating displacements) and •
// (rescaling, t = s'*t'). All operations are exact and validate membership;
// violations surface as DomainError values carrying the offending data.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dg/expr.hpp"
#include "dg/ring.hpp"

namespace dg {

struct LinearSet;
using LinearSetPtr = std::shared_ptr<const LinearSet>;

// A subset of K^dim closed under the ambient linear structure we need:
// membership is decidable and exact. Arrows hold their set by shared pointer;
// two arrows belong to the same space iff they hold the same set object.
struct LinearSet {
  enum class Kind { Whole, FiniteList, UnitDenominators, Product };

  RingPtr ring;
  size_t dim = 0;
  Kind kind = Kind::Whole;
  std::vector<Vec> points;             // FiniteList: explicit members
  std::vector<ExprPtr> denominators;   // UnitDenominators: these must evaluate to units
  LinearSetPtr left, right;            // Product: left.dim + right.dim = dim

  static LinearSetPtr whole(RingPtr ring, size_t dim);
  static LinearSetPtr finite_list(RingPtr ring, size_t dim, std::vector<Vec> points);
  // Membership: every expression in `denominators` (variables "x" for dim 1,
  // else "x1".."xd") evaluates to a unit of the ring.
  static LinearSetPtr unit_denominators(RingPtr ring, size_t dim, std::vector<ExprPtr> denominators);
  static LinearSetPtr product(LinearSetPtr a, LinearSetPtr b);

  bool contains(const Vec& p) const;
  std::vector<std::string> var_names() const;
  std::string describe() const;
};

// Base points of the two prolongation levels: (x; t) and (x; s, t).
struct BasePoint1 {
  Vec x;
  RingElem t;
};
struct BasePoint2 {
  Vec x;
  RingElem s, t;
};

struct Arrow1 {
  LinearSetPtr set;
  Vec x, v;
  RingElem t;
};

struct Arrow2 {
  LinearSetPtr set;
  Vec x, v;
  RingElem s, t;
};

// Validated constructors: check arities, ring consistency, and that both the
// anchor point and its displaced endpoint lie in the set.
Arrow1 make_arrow1(LinearSetPtr set, Vec x, Vec v, RingElem t);
Arrow2 make_arrow2(LinearSetPtr set, Vec x, Vec v, RingElem s, RingElem t);

bool arrow_eq(const Arrow1& a, const Arrow1& b);
bool arrow_eq(const Arrow2& a, const Arrow2& b);
bool base_eq(const BasePoint1& a, const BasePoint1& b, const Ring& r);
bool base_eq(const BasePoint2& a, const BasePoint2& b, const Ring& r);

std::string to_string(const Arrow1& a);
std::string to_string(const Arrow2& a);
std::string to_string(const BasePoint1& b, const Ring& r);
std::string to_string(const BasePoint2& b, const Ring& r);

// ---- first level ----------------------------------------------------------

BasePoint1 pi0(const Arrow1& a);           // (x; t)
BasePoint1 pi1(const Arrow1& a);           // (x + v*t; t)
Arrow1 z_pi(const LinearSetPtr& set, const BasePoint1& b);  // zero section

bool star_composable(const Arrow1& hi, const Arrow1& lo);
// compose_star(hi, lo): lo first, then hi; requires pi1(lo) == pi0(hi).
Arrow1 compose_star(const Arrow1& hi, const Arrow1& lo);
Arrow1 invert_star(const Arrow1& a);       // (x + v*t, -v; t)

// ---- second level ---------------------------------------------------------

BasePoint2 pi0(const Arrow2& a);           // (x; s, t)
BasePoint2 pi1(const Arrow2& a);           // (x + v*s*t; s, t)
Arrow2 z_pi(const LinearSetPtr& set, const BasePoint2& b);

Arrow1 partial0(const Arrow2& a);          // (x, v; s*t)
Arrow1 partial1(const Arrow2& a);          // (x, v*s; t)
Arrow2 z_partial(const Arrow1& a);         // (x, v; 1, t)
BasePoint1 partial0(const BasePoint2& b, const Ring& r);  // (x; s*t)
BasePoint1 partial1(const BasePoint2& b);                 // (x; t)
BasePoint2 z_partial(const BasePoint1& b, const Ring& r); // (x; 1, t)

bool star_composable(const Arrow2& hi, const Arrow2& lo);
Arrow2 compose_star(const Arrow2& hi, const Arrow2& lo);
Arrow2 invert_star(const Arrow2& a);       // (x + v*s*t, -v; s, t)

// bullet_composable(outer, inner): requires partial0(outer) == partial1(inner),
// i.e. same anchor x, outer.v == inner.v * inner.s, and inner.t == outer.s * outer.t.
bool bullet_composable(const Arrow2& outer, const Arrow2& inner);
Arrow2 compose_bullet(const Arrow2& outer, const Arrow2& inner);
bool bullet_composable_base(const BasePoint2& outer, const BasePoint2& inner, const Ring& r);
BasePoint2 compose_bullet_base(const BasePoint2& outer, const BasePoint2& inner, const Ring& r);

// ---- rescaling and trivializations ------------------------------------------

// phi_{s,t}: arrows at scale s*t to arrows at scale t, (x, v; s*t) -> (x, v*s; t).
Arrow1 scaling_phi(const RingElem& s, const RingElem& t, const Arrow1& a);

// For unit t, first-level arrows are the pair groupoid in disguise.
struct PairArrow {
  Vec y, x;     // an arrow x -> y
  RingElem t;
};
PairArrow phi_trivialize(const Arrow1& a);                       // requires t a unit
Arrow1 phi_untrivialize(const LinearSetPtr& set, const PairArrow& p);

// For unit s and t, second-level arrows trivialize into a pair of points
// together with an arrow u -> t in the scale group.
struct QuadArrow {
  Vec y, x;
  RingElem u, t;  // u = s*t
};
QuadArrow nonsingular_trivialize(const Arrow2& a);
Arrow2 nonsingular_untrivialize(const LinearSetPtr& set, const QuadArrow& q);

// ---- anchor and pregroupoid --------------------------------------------------

// kappa(a) = (pi1(a), pi0(a)): target and source, as base points.
std::pair<BasePoint1, BasePoint1> anchor(const Arrow1& a);

// [a2, a1, a0] = a2 * a1^{-1} * a0, defined when pi0(a2) == pi0(a1) and
// pi1(a1) == pi1(a0); equals (x0, v2 - v1 + v0; t).
Arrow1 pregroupoid_ternary(const Arrow1& a2, const Arrow1& a1, const Arrow1& a0);

// ---- products ------------------------------------------------------------------

// Split an arrow in a product set into its two factor arrows, and rejoin.
std::pair<Arrow1, Arrow1> product_split(const Arrow1& a);
Arrow1 product_join(const LinearSetPtr& product_set, const Arrow1& left, const Arrow1& right);

}  // namespace dg
