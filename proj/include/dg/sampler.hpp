// Deterministic sampling of ring elements, vectors, and arrows. Checks run
// exhaustively when the carrier is small enough to enumerate within budget;
// otherwise they draw a fixed number of pseudorandom samples from a seeded
// generator, and reports record the seed so runs are reproducible.
#pragma once

#include <cstdint>
#include <random>

#include "dg/prolong.hpp"
#include "dg/ring.hpp"

namespace dg {

constexpr size_t kExhaustiveBudget = 1000000;  // max tuples before sampling
constexpr size_t kSampleCount = 1000;          // draws per check when sampling

class Sampler {
public:
  explicit Sampler(uint64_t seed) : seed_(seed), rng_(seed) {}

  uint64_t seed() const { return seed_; }

  // Small exact values: rationals with numerator in [-9,9] and denominator in
  // [1,9]; integers in [-9,9]; uniform residues; pairs of base draws.
  RingElem sample(const Ring& r);
  RingElem sample_unit(const Ring& r);
  Vec sample_vec(const Ring& r, size_t dim);

  // Rejection-sampled member of the set; throws after too many misses.
  Vec sample_in(const LinearSet& set);

  // Arrow with both endpoints in the set (rejection on the endpoint).
  Arrow1 sample_arrow1(const LinearSetPtr& set);
  Arrow1 sample_arrow1(const LinearSetPtr& set, const RingElem& t);
  Arrow2 sample_arrow2(const LinearSetPtr& set);

  size_t index(size_t bound);  // uniform in [0, bound)

private:
  uint64_t seed_;
  std::mt19937_64 rng_;
};

// Whether tuples of `tuple_size` elements over the ring fit the exhaustive
// budget: |ring|^tuple_size <= kExhaustiveBudget.
bool prefer_exhaustive(const Ring& r, size_t tuple_size);

// All first-level arrows over the set with every (x, v, t) combination whose
// points lie in the set; requires a finite ring.
std::vector<Arrow1> enumerate_arrow1(const LinearSetPtr& set);
// Same at one fixed scale.
std::vector<Arrow1> enumerate_arrow1(const LinearSetPtr& set, const RingElem& t);
std::vector<Arrow2> enumerate_arrow2(const LinearSetPtr& set);
std::vector<BasePoint1> enumerate_base1(const LinearSetPtr& set);
std::vector<BasePoint2> enumerate_base2(const LinearSetPtr& set);
std::vector<Vec> enumerate_points(const LinearSetPtr& set);

}  // namespace dg
