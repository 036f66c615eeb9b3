// JSON (de)serialization: ring descriptors and shorthands, carrier sets, law
// and gluing files, arrows, and suite reports with stable field order.
#pragma once

#include <json.hpp>

#include "dg/manifold.hpp"

namespace dg {

using Json = nlohmann::ordered_json;

// "Q", "Z", "Z5", "Kt(Q,2)", "Kt(Z5,3)" (nestable).
RingPtr ring_from_shorthand(const std::string& text);

// Accepts a descriptor object {"kind": "modn", "n": 5} or a shorthand string.
RingPtr ring_from_json(const Json& j);
Json ring_to_json(const Ring& r);

// {"ring": ..., "dim": 1} plus optionally "denominators": ["x"],
// "points": [["0"], ...], or {"product": [a, b]}. A set without its own
// "ring" takes `fallback` (e.g. the --ring flag).
LinearSetPtr set_from_json(const Json& j, const RingPtr& fallback = nullptr);
Json set_to_json(const LinearSet& s);

// {"domain": ..., "codomain": ..., "base": ["x^2"], "factorizer": [...],
// "kind": "polynomial"}. A missing factorizer is derived symbolically (and
// the law verified); an explicit one is taken as-is so that deliberately
// broken fixtures reach the axiom checks.
Law law_from_json(const Json& j, const RingPtr& fallback = nullptr);
Json law_to_json(const Law& law);

// {"model": ..., "charts": [...], "overlaps": [{"i": 1, "j": 2,
// "domain": ..., "law": ...}]} with 1-based chart indices; entry (i, j)
// carries the transition from chart j into chart i on the given domain
// (chart-j coordinates).
GluingPtr gluing_from_json(const Json& j, const RingPtr& fallback = nullptr);

Json arrow_to_json(const Ring& r, const Arrow1& a);
Json arrow_to_json(const Ring& r, const Arrow2& a);

Json report_to_json(const SuiteReport& report);

// Parses the file, mapping I/O failures to DomainError.
Json load_json_file(const std::string& path);

}  // namespace dg
