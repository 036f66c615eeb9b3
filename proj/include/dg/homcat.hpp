// Pointwise compositions on sets of morphisms between prolongations: two
// morphisms F, G with the same domain and codomain compose arrow-by-arrow,
// (F * G)(a) = F(a) * G(a) when the images are star-composable at every
// arrow, and (F . G)(a) = F(a) . G(a) on the cells where the images are
// bullet-composable. Star composites stay expression-backed; bullet
// composites change the scale coordinate pointwise and are carried as maps.
#pragma once

#include <functional>
#include <optional>

#include "dg/law.hpp"

namespace dg {

struct HomElement {
  Law law;  // expression-backed representation (base + factorizer)
  // Pointwise action on second-level arrows for elements with no Law
  // representation (bullet composites); nullopt where undefined.
  std::function<std::optional<Arrow2>(const Arrow2&)> map2;

  bool closure_backed() const { return static_cast<bool>(map2); }
};

HomElement hom_from_law(Law law);

// First-level action (f(x), F(x,v,t); t); expression-backed elements only.
Arrow1 hom_apply1(const HomElement& h, const Arrow1& a);
// Second-level action (f(x), F(x,v,s*t); s, t); nullopt where a
// closure-backed element is undefined.
std::optional<Arrow2> hom_apply2(const HomElement& h, const Arrow2& a);

// Whether the images compose under star at every sample: pi1(G(a)) equals
// pi0(F(a)) for every first-level arrow of the shared domain (exhaustive over
// small finite rings, sampled otherwise).
bool hom_composable_star(const HomElement& F, const HomElement& G, Sampler& sampler);

// The pointwise star composite; verifies composability the same way and
// throws citing the offending sample when it fails. Expression-backed inputs
// give an expression-backed result (base of G, sum of the factorizers).
HomElement hom_star(const HomElement& F, const HomElement& G, Sampler& sampler);

// The zero-section-valued element over the same base map: a -> (f(x), 0; t).
// It is the unit for hom_star on F's side: hom_star(F, unit) = F.
HomElement hom_zero_section(const HomElement& F);

// The pointwise bullet composite, defined on the cells where the images are
// bullet-composable (a locus constraint on the scale coordinates). Verifies
// on the sampled locus that composability never fails for a reachable cell
// pair and returns a closure-backed element.
HomElement hom_bullet(const HomElement& F, const HomElement& G, Sampler& sampler);

// Closure: the star composite acts pointwise as promised, units behave, and
// composable endomorphism pairs commute (the codomain directions add in a
// commutative module).
SuiteReport check_hom_star_structure(const HomElement& F, const HomElement& G, Sampler& sampler);

}  // namespace dg
