#include "dg/prolong.hpp"

#include <sstream>

namespace dg {

namespace {

std::string vec_str(const Ring& r, const Vec& v) { return vec_to_string(r, v); }

void check_vec(const Ring& r, const Vec& v, size_t dim, const char* what) {
  if (v.size() != dim)
    throw DomainError(std::string(what) + ": expected dimension " + std::to_string(dim) +
                      ", got " + std::to_string(v.size()));
  for (const RingElem& c : v) r.check(c, what);
}

}  // namespace

LinearSetPtr LinearSet::whole(RingPtr ring, size_t dim) {
  auto s = std::make_shared<LinearSet>();
  s->ring = std::move(ring);
  s->dim = dim;
  s->kind = Kind::Whole;
  return s;
}

LinearSetPtr LinearSet::finite_list(RingPtr ring, size_t dim, std::vector<Vec> points) {
  auto s = std::make_shared<LinearSet>();
  for (const Vec& p : points) check_vec(*ring, p, dim, "finite list member");
  s->ring = std::move(ring);
  s->dim = dim;
  s->kind = Kind::FiniteList;
  s->points = std::move(points);
  return s;
}

LinearSetPtr LinearSet::unit_denominators(RingPtr ring, size_t dim,
                                          std::vector<ExprPtr> denominators) {
  auto s = std::make_shared<LinearSet>();
  s->ring = std::move(ring);
  s->dim = dim;
  s->kind = Kind::UnitDenominators;
  s->denominators = std::move(denominators);
  return s;
}

LinearSetPtr LinearSet::product(LinearSetPtr a, LinearSetPtr b) {
  if (!a || !b) throw DomainError("product of null sets");
  if (a->ring->describe() != b->ring->describe())
    throw DomainError("product factors live over different rings");
  auto s = std::make_shared<LinearSet>();
  s->ring = a->ring;
  s->dim = a->dim + b->dim;
  s->kind = Kind::Product;
  s->left = std::move(a);
  s->right = std::move(b);
  return s;
}

bool LinearSet::contains(const Vec& p) const {
  if (p.size() != dim) return false;
  switch (kind) {
    case Kind::Whole:
      return true;
    case Kind::FiniteList:
      for (const Vec& q : points)
        if (vec_eq(*ring, p, q)) return true;
      return false;
    case Kind::UnitDenominators: {
      Env env;
      std::vector<std::string> names = var_names();
      for (size_t i = 0; i < dim; ++i) env.emplace(names[i], p[i]);
      for (const ExprPtr& d : denominators) {
        RingElem val;
        try {
          val = evaluate(d, env, *ring);
        } catch (const DomainError&) {
          return false;
        }
        if (!ring->is_unit(val)) return false;
      }
      return true;
    }
    case Kind::Product: {
      Vec a(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(left->dim));
      Vec b(p.begin() + static_cast<std::ptrdiff_t>(left->dim), p.end());
      return left->contains(a) && right->contains(b);
    }
  }
  return false;
}

std::vector<std::string> LinearSet::var_names() const {
  std::vector<std::string> names;
  if (dim == 1) {
    names.push_back("x");
  } else {
    for (size_t i = 0; i < dim; ++i) names.push_back("x" + std::to_string(i + 1));
  }
  return names;
}

std::string LinearSet::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Whole:
      out << ring->describe() << "^" << dim;
      break;
    case Kind::FiniteList:
      out << "{" << points.size() << " points in " << ring->describe() << "^" << dim << "}";
      break;
    case Kind::UnitDenominators: {
      out << ring->describe() << "^" << dim << " where ";
      for (size_t i = 0; i < denominators.size(); ++i) {
        if (i) out << ", ";
        out << print_expr(denominators[i]);
      }
      out << " unit";
      break;
    }
    case Kind::Product:
      out << left->describe() << " x " << right->describe();
      break;
  }
  return out.str();
}

// ---- arrows ---------------------------------------------------------------------

Arrow1 make_arrow1(LinearSetPtr set, Vec x, Vec v, RingElem t) {
  if (!set) throw DomainError("arrow needs a carrier set");
  const Ring& r = *set->ring;
  check_vec(r, x, set->dim, "anchor point");
  check_vec(r, v, set->dim, "displacement");
  r.check(t, "scale");
  if (!set->contains(x))
    throw DomainError("anchor point " + vec_str(r, x) + " is outside " + set->describe());
  Vec end = vec_add(r, x, vec_scale(r, v, t));
  if (!set->contains(end))
    throw DomainError("endpoint " + vec_str(r, end) + " is outside " + set->describe());
  return Arrow1{std::move(set), std::move(x), std::move(v), std::move(t)};
}

Arrow2 make_arrow2(LinearSetPtr set, Vec x, Vec v, RingElem s, RingElem t) {
  if (!set) throw DomainError("arrow needs a carrier set");
  const Ring& r = *set->ring;
  check_vec(r, x, set->dim, "anchor point");
  check_vec(r, v, set->dim, "displacement");
  r.check(s, "scale");
  r.check(t, "scale");
  if (!set->contains(x))
    throw DomainError("anchor point " + vec_str(r, x) + " is outside " + set->describe());
  Vec end = vec_add(r, x, vec_scale(r, v, r.mul(s, t)));
  if (!set->contains(end))
    throw DomainError("endpoint " + vec_str(r, end) + " is outside " + set->describe());
  return Arrow2{std::move(set), std::move(x), std::move(v), std::move(s), std::move(t)};
}

bool arrow_eq(const Arrow1& a, const Arrow1& b) {
  if (a.set.get() != b.set.get()) return false;
  const Ring& r = *a.set->ring;
  return vec_eq(r, a.x, b.x) && vec_eq(r, a.v, b.v) && r.eq(a.t, b.t);
}

bool arrow_eq(const Arrow2& a, const Arrow2& b) {
  if (a.set.get() != b.set.get()) return false;
  const Ring& r = *a.set->ring;
  return vec_eq(r, a.x, b.x) && vec_eq(r, a.v, b.v) && r.eq(a.s, b.s) && r.eq(a.t, b.t);
}

bool base_eq(const BasePoint1& a, const BasePoint1& b, const Ring& r) {
  return vec_eq(r, a.x, b.x) && r.eq(a.t, b.t);
}

bool base_eq(const BasePoint2& a, const BasePoint2& b, const Ring& r) {
  return vec_eq(r, a.x, b.x) && r.eq(a.s, b.s) && r.eq(a.t, b.t);
}

std::string to_string(const Arrow1& a) {
  const Ring& r = *a.set->ring;
  return "(" + vec_str(r, a.x) + ", " + vec_str(r, a.v) + "; " + r.to_string(a.t) + ")";
}

std::string to_string(const Arrow2& a) {
  const Ring& r = *a.set->ring;
  return "(" + vec_str(r, a.x) + ", " + vec_str(r, a.v) + "; " + r.to_string(a.s) + ", " +
         r.to_string(a.t) + ")";
}

std::string to_string(const BasePoint1& b, const Ring& r) {
  return "(" + vec_str(r, b.x) + "; " + r.to_string(b.t) + ")";
}

std::string to_string(const BasePoint2& b, const Ring& r) {
  return "(" + vec_str(r, b.x) + "; " + r.to_string(b.s) + ", " + r.to_string(b.t) + ")";
}

// ---- first level ----------------------------------------------------------------

BasePoint1 pi0(const Arrow1& a) { return BasePoint1{a.x, a.t}; }

BasePoint1 pi1(const Arrow1& a) {
  const Ring& r = *a.set->ring;
  return BasePoint1{vec_add(r, a.x, vec_scale(r, a.v, a.t)), a.t};
}

Arrow1 z_pi(const LinearSetPtr& set, const BasePoint1& b) {
  return make_arrow1(set, b.x, vec_zero(*set->ring, set->dim), b.t);
}

bool star_composable(const Arrow1& hi, const Arrow1& lo) {
  if (hi.set.get() != lo.set.get()) return false;
  const Ring& r = *hi.set->ring;
  if (!r.eq(hi.t, lo.t)) return false;
  return vec_eq(r, hi.x, pi1(lo).x);
}

Arrow1 compose_star(const Arrow1& hi, const Arrow1& lo) {
  if (hi.set.get() != lo.set.get()) throw DomainError("arrows live in different sets");
  const Ring& r = *hi.set->ring;
  if (!r.eq(hi.t, lo.t))
    throw DomainError("scales differ: " + to_string(lo) + " vs " + to_string(hi));
  Vec end = pi1(lo).x;
  if (!vec_eq(r, hi.x, end))
    throw DomainError("arrows do not meet: endpoint " + vec_str(r, end) + " of " + to_string(lo) +
                      " vs anchor of " + to_string(hi));
  return make_arrow1(lo.set, lo.x, vec_add(r, hi.v, lo.v), lo.t);
}

Arrow1 invert_star(const Arrow1& a) {
  const Ring& r = *a.set->ring;
  return make_arrow1(a.set, pi1(a).x, vec_neg(r, a.v), a.t);
}

// ---- second level ----------------------------------------------------------------

BasePoint2 pi0(const Arrow2& a) { return BasePoint2{a.x, a.s, a.t}; }

BasePoint2 pi1(const Arrow2& a) {
  const Ring& r = *a.set->ring;
  return BasePoint2{vec_add(r, a.x, vec_scale(r, a.v, r.mul(a.s, a.t))), a.s, a.t};
}

Arrow2 z_pi(const LinearSetPtr& set, const BasePoint2& b) {
  return make_arrow2(set, b.x, vec_zero(*set->ring, set->dim), b.s, b.t);
}

Arrow1 partial0(const Arrow2& a) {
  const Ring& r = *a.set->ring;
  return make_arrow1(a.set, a.x, a.v, r.mul(a.s, a.t));
}

Arrow1 partial1(const Arrow2& a) {
  const Ring& r = *a.set->ring;
  return make_arrow1(a.set, a.x, vec_scale(r, a.v, a.s), a.t);
}

Arrow2 z_partial(const Arrow1& a) {
  return make_arrow2(a.set, a.x, a.v, a.set->ring->one(), a.t);
}

BasePoint1 partial0(const BasePoint2& b, const Ring& r) {
  return BasePoint1{b.x, r.mul(b.s, b.t)};
}

BasePoint1 partial1(const BasePoint2& b) { return BasePoint1{b.x, b.t}; }

BasePoint2 z_partial(const BasePoint1& b, const Ring& r) { return BasePoint2{b.x, r.one(), b.t}; }

bool star_composable(const Arrow2& hi, const Arrow2& lo) {
  if (hi.set.get() != lo.set.get()) return false;
  const Ring& r = *hi.set->ring;
  if (!r.eq(hi.s, lo.s) || !r.eq(hi.t, lo.t)) return false;
  return vec_eq(r, hi.x, pi1(lo).x);
}

Arrow2 compose_star(const Arrow2& hi, const Arrow2& lo) {
  if (hi.set.get() != lo.set.get()) throw DomainError("arrows live in different sets");
  const Ring& r = *hi.set->ring;
  if (!r.eq(hi.s, lo.s) || !r.eq(hi.t, lo.t))
    throw DomainError("scales differ: " + to_string(lo) + " vs " + to_string(hi));
  Vec end = pi1(lo).x;
  if (!vec_eq(r, hi.x, end))
    throw DomainError("arrows do not meet: endpoint " + vec_str(r, end) + " of " + to_string(lo) +
                      " vs anchor of " + to_string(hi));
  return make_arrow2(lo.set, lo.x, vec_add(r, hi.v, lo.v), lo.s, lo.t);
}

Arrow2 invert_star(const Arrow2& a) {
  const Ring& r = *a.set->ring;
  return make_arrow2(a.set, pi1(a).x, vec_neg(r, a.v), a.s, a.t);
}

bool bullet_composable(const Arrow2& outer, const Arrow2& inner) {
  if (outer.set.get() != inner.set.get()) return false;
  const Ring& r = *outer.set->ring;
  if (!vec_eq(r, outer.x, inner.x)) return false;
  if (!vec_eq(r, outer.v, vec_scale(r, inner.v, inner.s))) return false;
  return r.eq(inner.t, r.mul(outer.s, outer.t));
}

Arrow2 compose_bullet(const Arrow2& outer, const Arrow2& inner) {
  if (outer.set.get() != inner.set.get()) throw DomainError("arrows live in different sets");
  const Ring& r = *outer.set->ring;
  if (!vec_eq(r, outer.x, inner.x))
    throw DomainError("anchors differ: " + to_string(inner) + " vs " + to_string(outer));
  if (!vec_eq(r, outer.v, vec_scale(r, inner.v, inner.s)))
    throw DomainError("displacements incompatible: " + to_string(inner) + " vs " +
                      to_string(outer));
  if (!r.eq(inner.t, r.mul(outer.s, outer.t)))
    throw DomainError("scales incompatible: " + to_string(inner) + " vs " + to_string(outer));
  return make_arrow2(inner.set, inner.x, inner.v, r.mul(inner.s, outer.s), outer.t);
}

bool bullet_composable_base(const BasePoint2& outer, const BasePoint2& inner, const Ring& r) {
  return vec_eq(r, outer.x, inner.x) && r.eq(inner.t, r.mul(outer.s, outer.t));
}

BasePoint2 compose_bullet_base(const BasePoint2& outer, const BasePoint2& inner, const Ring& r) {
  if (!bullet_composable_base(outer, inner, r))
    throw DomainError("base points incompatible: " + to_string(inner, r) + " vs " +
                      to_string(outer, r));
  return BasePoint2{inner.x, r.mul(inner.s, outer.s), outer.t};
}

// ---- rescaling and trivializations -------------------------------------------------

Arrow1 scaling_phi(const RingElem& s, const RingElem& t, const Arrow1& a) {
  const Ring& r = *a.set->ring;
  if (!r.eq(a.t, r.mul(s, t)))
    throw DomainError("arrow scale " + r.to_string(a.t) + " is not " + r.to_string(s) + "*" +
                      r.to_string(t));
  return make_arrow1(a.set, a.x, vec_scale(r, a.v, s), t);
}

PairArrow phi_trivialize(const Arrow1& a) {
  const Ring& r = *a.set->ring;
  if (!r.is_unit(a.t))
    throw DomainError("scale " + r.to_string(a.t) + " is not a unit in " + r.describe());
  return PairArrow{pi1(a).x, a.x, a.t};
}

Arrow1 phi_untrivialize(const LinearSetPtr& set, const PairArrow& p) {
  const Ring& r = *set->ring;
  auto inv = r.is_unit(p.t);
  if (!inv)
    throw DomainError("scale " + r.to_string(p.t) + " is not a unit in " + r.describe());
  Vec v = vec_scale(r, vec_sub(r, p.y, p.x), *inv);
  return make_arrow1(set, p.x, v, p.t);
}

QuadArrow nonsingular_trivialize(const Arrow2& a) {
  const Ring& r = *a.set->ring;
  if (!r.is_unit(a.s) || !r.is_unit(a.t))
    throw DomainError("scales (" + r.to_string(a.s) + ", " + r.to_string(a.t) +
                      ") are not both units in " + r.describe());
  return QuadArrow{pi1(a).x, a.x, r.mul(a.s, a.t), a.t};
}

Arrow2 nonsingular_untrivialize(const LinearSetPtr& set, const QuadArrow& q) {
  const Ring& r = *set->ring;
  auto uinv = r.is_unit(q.u);
  auto tinv = r.is_unit(q.t);
  if (!uinv || !tinv)
    throw DomainError("scales (" + r.to_string(q.u) + ", " + r.to_string(q.t) +
                      ") are not both units in " + r.describe());
  Vec v = vec_scale(r, vec_sub(r, q.y, q.x), *uinv);
  RingElem s = r.mul(q.u, *tinv);
  return make_arrow2(set, q.x, v, s, q.t);
}

// ---- anchor and pregroupoid ---------------------------------------------------------

std::pair<BasePoint1, BasePoint1> anchor(const Arrow1& a) { return {pi1(a), pi0(a)}; }

Arrow1 pregroupoid_ternary(const Arrow1& a2, const Arrow1& a1, const Arrow1& a0) {
  if (a2.set.get() != a1.set.get() || a1.set.get() != a0.set.get())
    throw DomainError("arrows live in different sets");
  const Ring& r = *a0.set->ring;
  if (!r.eq(a2.t, a1.t) || !r.eq(a1.t, a0.t))
    throw DomainError("scales differ: " + to_string(a2) + ", " + to_string(a1) + ", " +
                      to_string(a0));
  if (!vec_eq(r, a2.x, a1.x))
    throw DomainError("sources differ: " + to_string(a2) + " vs " + to_string(a1));
  if (!vec_eq(r, pi1(a1).x, pi1(a0).x))
    throw DomainError("targets differ: " + to_string(a1) + " vs " + to_string(a0));
  Vec v = vec_add(r, vec_sub(r, a2.v, a1.v), a0.v);
  return make_arrow1(a0.set, a0.x, v, a0.t);
}

// ---- products --------------------------------------------------------------------------

std::pair<Arrow1, Arrow1> product_split(const Arrow1& a) {
  if (a.set->kind != LinearSet::Kind::Product)
    throw DomainError("arrow does not live in a product set");
  const LinearSetPtr& lset = a.set->left;
  const LinearSetPtr& rset = a.set->right;
  auto dl = static_cast<std::ptrdiff_t>(lset->dim);
  Vec xl(a.x.begin(), a.x.begin() + dl), xr(a.x.begin() + dl, a.x.end());
  Vec vl(a.v.begin(), a.v.begin() + dl), vr(a.v.begin() + dl, a.v.end());
  return {make_arrow1(lset, std::move(xl), std::move(vl), a.t),
          make_arrow1(rset, std::move(xr), std::move(vr), a.t)};
}

Arrow1 product_join(const LinearSetPtr& product_set, const Arrow1& left, const Arrow1& right) {
  if (product_set->kind != LinearSet::Kind::Product)
    throw DomainError("target set is not a product");
  if (product_set->left.get() != left.set.get() || product_set->right.get() != right.set.get())
    throw DomainError("factor arrows do not match the product's factors");
  const Ring& r = *product_set->ring;
  if (!r.eq(left.t, right.t))
    throw DomainError("scales differ: " + to_string(left) + " vs " + to_string(right));
  Vec x = left.x;
  x.insert(x.end(), right.x.begin(), right.x.end());
  Vec v = left.v;
  v.insert(v.end(), right.v.begin(), right.v.end());
  return make_arrow1(product_set, std::move(x), std::move(v), left.t);
}

}  // namespace dg
