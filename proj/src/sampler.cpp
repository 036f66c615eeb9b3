#include "dg/sampler.hpp"

namespace dg {

size_t Sampler::index(size_t bound) {
  std::uniform_int_distribution<size_t> dist(0, bound - 1);
  return dist(rng_);
}

RingElem Sampler::sample(const Ring& r) {
  switch (r.kind()) {
    case RingKind::Integers: {
      std::uniform_int_distribution<long> dist(-9, 9);
      return r.from_int(dist(rng_));
    }
    case RingKind::Rationals: {
      std::uniform_int_distribution<long> num(-9, 9);
      std::uniform_int_distribution<long> den(1, 9);
      mpq_class q(num(rng_), den(rng_));
      q.canonicalize();
      return r.from_rational(q);
    }
    case RingKind::ModN: {
      std::uniform_int_distribution<unsigned long> dist(0, r.modulus().get_ui() - 1);
      return r.from_int(static_cast<long>(dist(rng_)));
    }
    case RingKind::Truncated: {
      RingElem x = sample(*r.base());
      RingElem u = sample(*r.base());
      return r.make_pair(x, u);
    }
  }
  throw DomainError("unknown ring kind");
}

RingElem Sampler::sample_unit(const Ring& r) {
  for (int tries = 0; tries < 1000; ++tries) {
    RingElem a = sample(r);
    if (r.is_unit(a)) return a;
  }
  throw DomainError("could not sample a unit of " + r.describe());
}

Vec Sampler::sample_vec(const Ring& r, size_t dim) {
  Vec v;
  v.reserve(dim);
  for (size_t i = 0; i < dim; ++i) v.push_back(sample(r));
  return v;
}

Vec Sampler::sample_in(const LinearSet& set) {
  for (int tries = 0; tries < 10000; ++tries) {
    Vec p = sample_vec(*set.ring, set.dim);
    if (set.contains(p)) return p;
  }
  throw DomainError("could not sample a member of " + set.describe());
}

Arrow1 Sampler::sample_arrow1(const LinearSetPtr& set) {
  const Ring& r = *set->ring;
  for (int tries = 0; tries < 10000; ++tries) {
    Vec x = sample_in(*set);
    Vec v = sample_vec(r, set->dim);
    RingElem t = sample(r);
    if (set->contains(vec_add(r, x, vec_scale(r, v, t)))) return Arrow1{set, x, v, t};
  }
  throw DomainError("could not sample an arrow over " + set->describe());
}

Arrow1 Sampler::sample_arrow1(const LinearSetPtr& set, const RingElem& t) {
  const Ring& r = *set->ring;
  for (int tries = 0; tries < 10000; ++tries) {
    Vec x = sample_in(*set);
    Vec v = sample_vec(r, set->dim);
    if (set->contains(vec_add(r, x, vec_scale(r, v, t)))) return Arrow1{set, x, v, t};
  }
  throw DomainError("could not sample an arrow over " + set->describe());
}

Arrow2 Sampler::sample_arrow2(const LinearSetPtr& set) {
  const Ring& r = *set->ring;
  for (int tries = 0; tries < 10000; ++tries) {
    Vec x = sample_in(*set);
    Vec v = sample_vec(r, set->dim);
    RingElem s = sample(r);
    RingElem t = sample(r);
    if (set->contains(vec_add(r, x, vec_scale(r, v, r.mul(s, t))))) return Arrow2{set, x, v, s, t};
  }
  throw DomainError("could not sample an arrow over " + set->describe());
}

bool prefer_exhaustive(const Ring& r, size_t tuple_size) {
  auto n = r.size();
  if (!n) return false;
  size_t total = 1;
  for (size_t i = 0; i < tuple_size; ++i) {
    if (total > kExhaustiveBudget / *n) return false;
    total *= *n;
  }
  return total <= kExhaustiveBudget;
}

namespace {

std::vector<Vec> enumerate_vecs(const Ring& r, size_t dim) {
  auto n = r.size();
  if (!n) throw DomainError("cannot enumerate vectors over " + r.describe());
  std::vector<RingElem> elems = r.all_elements();
  std::vector<Vec> out;
  std::vector<size_t> idx(dim, 0);
  while (true) {
    Vec v;
    v.reserve(dim);
    for (size_t i = 0; i < dim; ++i) v.push_back(elems[idx[i]]);
    out.push_back(std::move(v));
    size_t k = 0;
    while (k < dim && ++idx[k] == elems.size()) {
      idx[k] = 0;
      ++k;
    }
    if (k == dim) break;
    if (dim == 0) break;
  }
  if (dim == 0) out.resize(1);
  return out;
}

}  // namespace

std::vector<Vec> enumerate_points(const LinearSetPtr& set) {
  if (set->kind == LinearSet::Kind::FiniteList) return set->points;
  std::vector<Vec> all = enumerate_vecs(*set->ring, set->dim);
  std::vector<Vec> out;
  for (Vec& p : all)
    if (set->contains(p)) out.push_back(std::move(p));
  return out;
}

std::vector<Arrow1> enumerate_arrow1(const LinearSetPtr& set) {
  std::vector<Arrow1> out;
  const Ring& r = *set->ring;
  std::vector<Vec> points = enumerate_points(set);
  std::vector<Vec> vs = enumerate_vecs(r, set->dim);
  std::vector<RingElem> ts = r.all_elements();
  for (const Vec& x : points)
    for (const Vec& v : vs)
      for (const RingElem& t : ts)
        if (set->contains(vec_add(r, x, vec_scale(r, v, t)))) out.push_back(Arrow1{set, x, v, t});
  return out;
}

std::vector<Arrow1> enumerate_arrow1(const LinearSetPtr& set, const RingElem& t) {
  std::vector<Arrow1> out;
  const Ring& r = *set->ring;
  for (const Vec& x : enumerate_points(set))
    for (const Vec& v : enumerate_vecs(r, set->dim))
      if (set->contains(vec_add(r, x, vec_scale(r, v, t)))) out.push_back(Arrow1{set, x, v, t});
  return out;
}

std::vector<Arrow2> enumerate_arrow2(const LinearSetPtr& set) {
  std::vector<Arrow2> out;
  const Ring& r = *set->ring;
  std::vector<Vec> points = enumerate_points(set);
  std::vector<Vec> vs = enumerate_vecs(r, set->dim);
  std::vector<RingElem> scalars = r.all_elements();
  for (const Vec& x : points)
    for (const Vec& v : vs)
      for (const RingElem& s : scalars)
        for (const RingElem& t : scalars)
          if (set->contains(vec_add(r, x, vec_scale(r, v, r.mul(s, t)))))
            out.push_back(Arrow2{set, x, v, s, t});
  return out;
}

std::vector<BasePoint1> enumerate_base1(const LinearSetPtr& set) {
  std::vector<BasePoint1> out;
  for (const Vec& x : enumerate_points(set))
    for (const RingElem& t : set->ring->all_elements()) out.push_back(BasePoint1{x, t});
  return out;
}

std::vector<BasePoint2> enumerate_base2(const LinearSetPtr& set) {
  std::vector<BasePoint2> out;
  std::vector<RingElem> scalars = set->ring->all_elements();
  for (const Vec& x : enumerate_points(set))
    for (const RingElem& s : scalars)
      for (const RingElem& t : scalars) out.push_back(BasePoint2{x, s, t});
  return out;
}

}  // namespace dg
