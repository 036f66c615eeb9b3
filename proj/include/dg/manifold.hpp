// Spaces glued from overlapping coordinate charts: gluing data (overlaps and
// transition laws subject to the cocycle relations), points and first-level
// arrows up to chart equivalence, composition through a common chart, and
// chart-compatible families of laws between two glued spaces.
#pragma once

#include <memory>
#include <optional>

#include "dg/law.hpp"

namespace dg {

struct GluingData {
  RingPtr ring;
  size_t dim = 1;
  std::vector<LinearSetPtr> chart;                 // chart domains U_i
  std::vector<std::vector<LinearSetPtr>> overlap;  // V_ij in chart-i coordinates
  // transition[i][j] maps chart-j coordinates to chart-i coordinates,
  // V_ji -> V_ij; the diagonal holds identity laws.
  std::vector<std::vector<Law>> transition;

  size_t charts() const { return chart.size(); }
};
using GluingPtr = std::shared_ptr<const GluingData>;

// Shape-checks the data and fills the diagonal (full overlaps, identity
// transitions) where it was left empty.
GluingPtr seal_gluing(GluingData g);

// Two charts over the ring with the off-diagonal overlap x != 0 and
// transitions x -> 1/x.
GluingPtr projective_line(RingPtr ring);

struct ManifoldPoint {
  size_t chart = 0;
  Vec x;
};

struct ManifoldArrow {
  size_t chart = 0;
  Arrow1 arrow;  // carried by the chart domain
};

struct ManifoldCell {
  size_t chart = 0;
  Arrow2 cell;
};

ManifoldPoint make_point(const GluingPtr& g, size_t chart, Vec x);
ManifoldArrow make_manifold_arrow(const GluingPtr& g, size_t chart, Vec x, Vec v, RingElem t);
ManifoldCell make_manifold_cell(const GluingPtr& g, size_t chart, Vec x, Vec v, RingElem s,
                                RingElem t);

std::string to_string(const GluingData& g, const ManifoldPoint& p);
std::string to_string(const GluingData& g, const ManifoldArrow& a);

// (i, x) ~ (j, y) when the transition from chart j carries y to x.
bool same_point(const GluingPtr& g, const ManifoldPoint& p, const ManifoldPoint& q);

// Arrows agree when some chart represents both with equal coordinates.
bool same_arrow(const GluingPtr& g, const ManifoldArrow& a, const ManifoldArrow& b);

// Representative in the target chart; errors when the point (or the arrow's
// footprint) does not lie in the overlap toward that chart.
ManifoldPoint transport_point(const GluingPtr& g, const ManifoldPoint& p, size_t to_chart);
ManifoldArrow transport_arrow(const GluingPtr& g, const ManifoldArrow& a, size_t to_chart);

// The lowest chart index that can represent the point, with its coordinates
// there; used to make point equality and listings deterministic.
ManifoldPoint canonicalize(const GluingPtr& g, const ManifoldPoint& p);

ManifoldPoint m1_source(const GluingPtr& g, const ManifoldArrow& a);  // pi0
ManifoldPoint m1_target(const GluingPtr& g, const ManifoldArrow& a);  // pi1

// Composition "a then b": requires target(a) ~ source(b) and a common chart
// whose overlaps contain all three endpoint footprints; composes with star
// there. No admissible chart -> error (the pair is not handy).
ManifoldArrow m1_compose(const GluingPtr& g, const ManifoldArrow& a, const ManifoldArrow& b);

// Bullet of two second-level cells in one chart; cross-chart bullet is not
// offered (no gluing mechanism is defined for it here).
ManifoldCell m2_compose_local(const GluingPtr& g, const ManifoldCell& outer,
                              const ManifoldCell& inner);

// Identity transitions, cocycle relations on sampled triple overlaps, and the
// law axioms of every transition.
SuiteReport validate_gluing(const GluingPtr& g, Sampler& sampler);

// A family of laws between two glued spaces: piece[i][j] maps source chart j
// into target chart i. Compatibility ties the pieces together over the
// overlaps; missing pieces are induced by conjugating a given one with the
// transitions where that composite can be formed.
struct ManifoldLaw {
  GluingPtr source, target;
  std::vector<std::vector<std::optional<Law>>> piece;
  std::vector<std::vector<char>> provided;  // 1 = given, 0 = induced or absent
};

ManifoldLaw make_manifold_law(GluingPtr source, GluingPtr target,
                              std::vector<std::vector<std::optional<Law>>> pieces);

// Applies the first present piece that accepts the arrow's footprint,
// transporting across source charts when needed.
ManifoldArrow manifold_apply1(const ManifoldLaw& ml, const ManifoldArrow& a);

// Law axioms of each piece plus the compatibility equations
// piece[k][l] = transition'[k][i] o piece[i][j] o transition[j][l] on samples.
SuiteReport check_manifold_law(const ManifoldLaw& ml, Sampler& sampler);

}  // namespace dg
