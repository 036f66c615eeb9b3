// Concrete verification suites for the prolongation structures over a finite
// carrier: the first-level groupoid, the second-level double structure, the
// pregroupoid bracket, the unit-scale trivializations, and the scaled action
// category with its forgetful projection.
#pragma once

#include "dg/checker.hpp"
#include "dg/prolong.hpp"
#include "dg/sampler.hpp"

namespace dg {

// Groupoid axioms for first-level arrows (x, v; t) over every scale.
SuiteReport run_prolong1_suite(const LinearSetPtr& set);

// Double-category axioms for second-level arrows (x, v; s, t), including the
// interchange law and the star-inversion involution.
SuiteReport run_prolong2_suite(const LinearSetPtr& set);

// Para-associativity and idempotency of the bracket [p, q, r] on first-level
// arrows, with endpoints given by the anchor.
SuiteReport run_prolong_pregroupoid_suite(const LinearSetPtr& set);

// At unit scales arrows trivialize to the pair groupoid; at scale zero the
// arrows form the additive direction bundle. Checks both ends.
SuiteReport run_interpolation_suite(const LinearSetPtr& set);

// At jointly unit scales (s, t), second-level arrows trivialize to a pair of
// points with an arrow in the scale group; star becomes pair composition and
// bullet becomes scale composition.
SuiteReport run_nonsingular_trivialization_suite(const LinearSetPtr& set);

// The category of scaled directions (v; s, t) over the ring, its
// invertibility criterion (s a unit), the underlying scale category, and the
// forgetful projection between them.
SuiteReport run_scaled_action_suite(const RingPtr& ring);

}  // namespace dg
