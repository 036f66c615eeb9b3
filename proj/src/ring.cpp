#include "dg/ring.hpp"

#include <sstream>

namespace dg {

namespace {

mpz_class canon_mod(const mpz_class& a, const mpz_class& n) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());  // result in [0, n)
  return r;
}

const std::pair<mpz_class, mpz_class>& as_mod(const RingElem& a) {
  return std::get<std::pair<mpz_class, mpz_class>>(a.payload());
}

}  // namespace

bool RingElem::operator==(const RingElem& o) const {
  if (payload_.index() != o.payload_.index()) return false;
  switch (payload_.index()) {
    case 0:
      return std::get<0>(payload_) == std::get<0>(o.payload_);
    case 1:
      return std::get<1>(payload_) == std::get<1>(o.payload_);
    case 2:
      return std::get<2>(payload_) == std::get<2>(o.payload_);
    default: {
      const auto& a = std::get<3>(payload_);
      const auto& b = std::get<3>(o.payload_);
      return a->x == b->x && a->u == b->u;
    }
  }
}

RingPtr Ring::integers() {
  static RingPtr inst = [] {
    auto r = std::shared_ptr<Ring>(new Ring);
    r->kind_ = RingKind::Integers;
    return RingPtr(r);
  }();
  return inst;
}

RingPtr Ring::rationals() {
  static RingPtr inst = [] {
    auto r = std::shared_ptr<Ring>(new Ring);
    r->kind_ = RingKind::Rationals;
    return RingPtr(r);
  }();
  return inst;
}

RingPtr Ring::modn(const mpz_class& n) {
  if (n < 2) throw DomainError("mod-n ring requires n >= 2, got n=" + n.get_str());
  auto r = std::shared_ptr<Ring>(new Ring);
  r->kind_ = RingKind::ModN;
  r->n_ = n;
  return r;
}

RingPtr Ring::truncated(RingPtr base, const RingElem& t) {
  if (!base) throw DomainError("truncated ring requires a base ring");
  base->check(t, "truncated parameter");
  auto r = std::shared_ptr<Ring>(new Ring);
  r->kind_ = RingKind::Truncated;
  r->base_ = std::move(base);
  r->t_ = t;
  return r;
}

void Ring::check(const RingElem& a, const char* op) const {
  bool ok = false;
  switch (kind_) {
    case RingKind::Integers:
      ok = std::holds_alternative<mpz_class>(a.payload());
      break;
    case RingKind::Rationals:
      ok = std::holds_alternative<mpq_class>(a.payload());
      break;
    case RingKind::ModN:
      ok = std::holds_alternative<std::pair<mpz_class, mpz_class>>(a.payload()) &&
           as_mod(a).second == n_;
      break;
    case RingKind::Truncated:
      ok = std::holds_alternative<std::shared_ptr<const KtPair>>(a.payload());
      if (ok) {
        const auto& p = *std::get<std::shared_ptr<const KtPair>>(a.payload());
        base_->check(p.x, op);
        base_->check(p.u, op);
      }
      break;
  }
  if (!ok)
    throw DomainError(std::string(op) + ": operand does not belong to ring " + describe());
}

std::optional<size_t> Ring::size() const {
  switch (kind_) {
    case RingKind::ModN:
      return n_.fits_ulong_p() ? std::optional<size_t>(n_.get_ui()) : std::nullopt;
    case RingKind::Truncated: {
      auto b = base_->size();
      if (!b) return std::nullopt;
      return *b * *b;
    }
    default:
      return std::nullopt;
  }
}

RingElem Ring::element_at(size_t idx) const {
  switch (kind_) {
    case RingKind::ModN:
      return RingElem(std::make_pair(mpz_class(static_cast<unsigned long>(idx)), n_));
    case RingKind::Truncated: {
      size_t b = *base_->size();
      return make_pair(base_->element_at(idx / b), base_->element_at(idx % b));
    }
    default:
      throw DomainError("element_at: ring " + describe() + " is not enumerable");
  }
}

std::vector<RingElem> Ring::all_elements() const {
  auto n = size();
  if (!n) throw DomainError("all_elements: ring " + describe() + " is not finite");
  std::vector<RingElem> out;
  out.reserve(*n);
  for (size_t i = 0; i < *n; ++i) out.push_back(element_at(i));
  return out;
}

RingElem Ring::zero() const { return from_int(0); }
RingElem Ring::one() const { return from_int(1); }

RingElem Ring::from_int(long v) const {
  switch (kind_) {
    case RingKind::Integers:
      return RingElem(mpz_class(v));
    case RingKind::Rationals:
      return RingElem(mpq_class(v));
    case RingKind::ModN:
      return RingElem(std::make_pair(canon_mod(mpz_class(v), n_), n_));
    case RingKind::Truncated:
      return make_pair(base_->from_int(v), base_->from_int(0));
  }
  throw DomainError("from_int: bad ring kind");
}

RingElem Ring::from_rational(const mpq_class& raw) const {
  // GMP comparisons and arithmetic are only defined on canonical rationals;
  // callers may hand over values built as mpq_class(p, q) with shared factors
  // or a negative denominator, so normalize here.
  if (raw.get_den() == 0) throw DomainError("rational with zero denominator");
  mpq_class q = raw;
  q.canonicalize();
  switch (kind_) {
    case RingKind::Rationals:
      return RingElem(q);
    default: {
      RingElem num = [&] {
        switch (kind_) {
          case RingKind::Integers:
            return RingElem(mpz_class(q.get_num()));
          case RingKind::ModN:
            return RingElem(std::make_pair(canon_mod(q.get_num(), n_), n_));
          default:  // Truncated
            return make_pair(base_->from_rational(mpq_class(q.get_num())),
                             base_->from_int(0));
        }
      }();
      if (q.get_den() == 1) return num;
      RingElem den = [&] {
        switch (kind_) {
          case RingKind::Integers:
            return RingElem(mpz_class(q.get_den()));
          case RingKind::ModN:
            return RingElem(std::make_pair(canon_mod(q.get_den(), n_), n_));
          default:
            return make_pair(base_->from_rational(mpq_class(q.get_den())),
                             base_->from_int(0));
        }
      }();
      return div(num, den);
    }
  }
}

RingElem Ring::add(const RingElem& a, const RingElem& b) const {
  check(a, "add");
  check(b, "add");
  switch (kind_) {
    case RingKind::Integers:
      return RingElem(mpz_class(std::get<mpz_class>(a.payload()) +
                                std::get<mpz_class>(b.payload())));
    case RingKind::Rationals: {
      mpq_class r = std::get<mpq_class>(a.payload()) + std::get<mpq_class>(b.payload());
      r.canonicalize();
      return RingElem(r);
    }
    case RingKind::ModN:
      return RingElem(std::make_pair(canon_mod(as_mod(a).first + as_mod(b).first, n_), n_));
    case RingKind::Truncated: {
      auto [ax, au] = split_pair(a);
      auto [bx, bu] = split_pair(b);
      return make_pair(base_->add(ax, bx), base_->add(au, bu));
    }
  }
  throw DomainError("add: bad ring kind");
}

RingElem Ring::sub(const RingElem& a, const RingElem& b) const { return add(a, neg(b)); }

RingElem Ring::neg(const RingElem& a) const {
  check(a, "neg");
  switch (kind_) {
    case RingKind::Integers:
      return RingElem(mpz_class(-std::get<mpz_class>(a.payload())));
    case RingKind::Rationals: {
      mpq_class r = -std::get<mpq_class>(a.payload());
      r.canonicalize();
      return RingElem(r);
    }
    case RingKind::ModN:
      return RingElem(std::make_pair(canon_mod(-as_mod(a).first, n_), n_));
    case RingKind::Truncated: {
      auto [ax, au] = split_pair(a);
      return make_pair(base_->neg(ax), base_->neg(au));
    }
  }
  throw DomainError("neg: bad ring kind");
}

RingElem Ring::mul(const RingElem& a, const RingElem& b) const {
  check(a, "mul");
  check(b, "mul");
  switch (kind_) {
    case RingKind::Integers:
      return RingElem(mpz_class(std::get<mpz_class>(a.payload()) *
                                std::get<mpz_class>(b.payload())));
    case RingKind::Rationals: {
      mpq_class r = std::get<mpq_class>(a.payload()) * std::get<mpq_class>(b.payload());
      r.canonicalize();
      return RingElem(r);
    }
    case RingKind::ModN:
      return RingElem(std::make_pair(canon_mod(as_mod(a).first * as_mod(b).first, n_), n_));
    case RingKind::Truncated: {
      auto p = kt_mul(*base_, split_pair(a), split_pair(b), t_);
      return make_pair(p.first, p.second);
    }
  }
  throw DomainError("mul: bad ring kind");
}

bool Ring::eq(const RingElem& a, const RingElem& b) const {
  check(a, "eq");
  check(b, "eq");
  return a == b;  // canonical forms make structural equality correct
}

std::optional<RingElem> Ring::is_unit(const RingElem& a) const {
  check(a, "is_unit");
  switch (kind_) {
    case RingKind::Integers: {
      const auto& z = std::get<mpz_class>(a.payload());
      if (z == 1 || z == -1) return RingElem(mpz_class(z));  // self-inverse
      return std::nullopt;
    }
    case RingKind::Rationals: {
      const auto& q = std::get<mpq_class>(a.payload());
      if (q == 0) return std::nullopt;
      mpq_class inv = 1 / q;
      inv.canonicalize();
      return RingElem(inv);
    }
    case RingKind::ModN: {
      // Extended Euclid: a*s + n*t = g; a is a unit iff g == 1.
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                 as_mod(a).first.get_mpz_t(), n_.get_mpz_t());
      if (g != 1) return std::nullopt;
      return RingElem(std::make_pair(canon_mod(s, n_), n_));
    }
    case RingKind::Truncated: {
      // (x,u) is invertible iff both algebra projections x and x + u*t are
      // units in the base; then (x,u)^-1 = (x^-1, -u * x^-1 * (x+ut)^-1).
      auto [x, u] = split_pair(a);
      auto xinv = base_->is_unit(x);
      if (!xinv) return std::nullopt;
      RingElem pr1 = base_->add(x, base_->mul(u, t_));
      auto pinv = base_->is_unit(pr1);
      if (!pinv) return std::nullopt;
      RingElem second = base_->neg(base_->mul(base_->mul(u, *xinv), *pinv));
      return make_pair(*xinv, second);
    }
  }
  throw DomainError("is_unit: bad ring kind");
}

RingElem Ring::div(const RingElem& a, const RingElem& b) const {
  auto inv = is_unit(b);
  if (!inv)
    throw DomainError("division by non-unit " + to_string(b) + " in " + describe());
  return mul(a, *inv);
}

RingElem Ring::make_pair(const RingElem& x, const RingElem& u) const {
  if (kind_ != RingKind::Truncated)
    throw DomainError("make_pair: " + describe() + " is not a truncated ring");
  base_->check(x, "make_pair");
  base_->check(u, "make_pair");
  return RingElem(std::make_shared<const KtPair>(KtPair{x, u}));
}

std::pair<RingElem, RingElem> Ring::split_pair(const RingElem& a) const {
  if (kind_ != RingKind::Truncated)
    throw DomainError("split_pair: " + describe() + " is not a truncated ring");
  check(a, "split_pair");
  const auto& p = *std::get<std::shared_ptr<const KtPair>>(a.payload());
  return {p.x, p.u};
}

std::string Ring::to_string(const RingElem& a) const {
  check(a, "to_string");
  switch (kind_) {
    case RingKind::Integers:
      return std::get<mpz_class>(a.payload()).get_str();
    case RingKind::Rationals:
      return std::get<mpq_class>(a.payload()).get_str();
    case RingKind::ModN:
      return as_mod(a).first.get_str();
    case RingKind::Truncated: {
      auto [x, u] = split_pair(a);
      return "(" + base_->to_string(x) + "," + base_->to_string(u) + ")";
    }
  }
  throw DomainError("to_string: bad ring kind");
}

RingElem Ring::parse(const std::string& text) const {
  auto fail = [&]() -> DomainError {
    return DomainError("cannot parse '" + text + "' as an element of " + describe());
  };
  switch (kind_) {
    case RingKind::Truncated: {
      if (text.size() < 2 || text.front() != '(' || text.back() != ')') throw fail();
      // Split at the comma balancing nested parentheses.
      int depth = 0;
      size_t comma = std::string::npos;
      for (size_t i = 1; i + 1 < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        if (text[i] == ')') --depth;
        if (text[i] == ',' && depth == 0) {
          comma = i;
          break;
        }
      }
      if (comma == std::string::npos) throw fail();
      return make_pair(base_->parse(text.substr(1, comma - 1)),
                       base_->parse(text.substr(comma + 1, text.size() - comma - 2)));
    }
    default: {
      try {
        mpq_class q(text);
        if (q.get_den() == 0) throw fail();  // canonicalize would raise SIGFPE
        q.canonicalize();
        return from_rational(q);
      } catch (const std::invalid_argument&) {
        throw fail();
      }
    }
  }
}

std::string Ring::describe() const {
  switch (kind_) {
    case RingKind::Integers:
      return "Z";
    case RingKind::Rationals:
      return "Q";
    case RingKind::ModN:
      return "Z/" + n_.get_str();
    case RingKind::Truncated:
      return "K_" + base_->to_string(t_) + "(" + base_->describe() + ")";
  }
  return "?";
}

std::pair<RingElem, RingElem> kt_mul(const Ring& base,
                                     const std::pair<RingElem, RingElem>& a,
                                     const std::pair<RingElem, RingElem>& b,
                                     const RingElem& t) {
  const auto& [x, u] = a;
  const auto& [y, v] = b;
  // (x,u)*(y,v) = (xy, xv + uy + t*u*v)
  RingElem first = base.mul(x, y);
  RingElem second =
      base.add(base.add(base.mul(x, v), base.mul(u, y)), base.mul(t, base.mul(u, v)));
  return {first, second};
}

Vec vec_add(const Ring& r, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DomainError("vec_add: dimension mismatch");
  Vec out;
  out.reserve(a.size());
  for (size_t i = 0; i < a.size(); ++i) out.push_back(r.add(a[i], b[i]));
  return out;
}

Vec vec_sub(const Ring& r, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DomainError("vec_sub: dimension mismatch");
  Vec out;
  out.reserve(a.size());
  for (size_t i = 0; i < a.size(); ++i) out.push_back(r.sub(a[i], b[i]));
  return out;
}

Vec vec_neg(const Ring& r, const Vec& a) {
  Vec out;
  out.reserve(a.size());
  for (const auto& c : a) out.push_back(r.neg(c));
  return out;
}

Vec vec_scale(const Ring& r, const Vec& a, const RingElem& s) {
  Vec out;
  out.reserve(a.size());
  for (const auto& c : a) out.push_back(r.mul(c, s));
  return out;
}

bool vec_eq(const Ring& r, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!r.eq(a[i], b[i])) return false;
  return true;
}

Vec vec_zero(const Ring& r, size_t dim) { return Vec(dim, r.zero()); }

std::string vec_to_string(const Ring& r, const Vec& a) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) os << ",";
    os << r.to_string(a[i]);
  }
  os << "]";
  return os.str();
}

std::pair<Vec, Vec> module_action_t(const Ring& base,
                                    const std::pair<RingElem, RingElem>& scalar,
                                    const std::pair<Vec, Vec>& vec,
                                    const RingElem& t) {
  if (!base.commutative())
    throw DomainError("module_action_t requires a commutative base ring");
  const auto& [r, s] = scalar;
  const auto& [x, v] = vec;
  // (r,s)·(x,v) = (r·x, r·v + s·x + t·s·v)
  Vec first = vec_scale(base, x, r);
  Vec second = vec_add(base, vec_add(base, vec_scale(base, v, r), vec_scale(base, x, s)),
                       vec_scale(base, v, base.mul(t, s)));
  return {first, second};
}

}  // namespace dg
