#include "dg/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace dg {

namespace {

std::string strip_spaces(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  return s;
}

RingElem parse_elem(const Ring& r, const Json& j, const char* what) {
  if (j.is_string()) return r.parse(j.get<std::string>());
  if (j.is_number_integer()) return r.from_int(j.get<long>());
  throw DomainError(std::string(what) + " must be a string or integer, got " + j.dump());
}

std::vector<ExprPtr> parse_expr_list(const Json& j, const char* what) {
  if (!j.is_array()) throw DomainError(std::string(what) + " must be an array of expressions");
  std::vector<ExprPtr> out;
  for (const Json& e : j) {
    if (!e.is_string()) throw DomainError(std::string(what) + " entries must be strings");
    try {
      out.push_back(parse_expr(e.get<std::string>()));
    } catch (const ParseError& pe) {
      throw DomainError(std::string(what) + ": " + pe.what());
    }
  }
  return out;
}

}  // namespace

RingPtr ring_from_shorthand(const std::string& text) {
  const std::string s = strip_spaces(text);
  if (s == "Q") return Ring::rationals();
  if (s == "Z") return Ring::integers();
  if (s.size() > 1 && s[0] == 'Z' &&
      std::all_of(s.begin() + 1, s.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return Ring::modn(mpz_class(s.substr(1)));
  if (s.rfind("Kt(", 0) == 0 && s.back() == ')') {
    const std::string inner = s.substr(3, s.size() - 4);
    int depth = 0;
    size_t comma = std::string::npos;
    for (size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0) {
        comma = i;
        break;
      }
    }
    if (comma != std::string::npos) {
      RingPtr base = ring_from_shorthand(inner.substr(0, comma));
      return Ring::truncated(base, base->parse(inner.substr(comma + 1)));
    }
  }
  throw DomainError("unknown ring shorthand '" + text + "'; expected Q, Z, Zn, or Kt(base,t)");
}

RingPtr ring_from_json(const Json& j) {
  if (j.is_string()) return ring_from_shorthand(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind"))
    throw DomainError("ring descriptor must be a shorthand string or {\"kind\": ...}: " +
                      j.dump());
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "integers") return Ring::integers();
  if (kind == "rationals") return Ring::rationals();
  if (kind == "modn") {
    const Json& n = j.at("n");
    return Ring::modn(n.is_string() ? mpz_class(n.get<std::string>())
                                    : mpz_class(n.get<long>()));
  }
  if (kind == "truncated") {
    RingPtr base = ring_from_json(j.at("base"));
    return Ring::truncated(base, parse_elem(*base, j.at("t"), "truncated ring parameter t"));
  }
  throw DomainError("unknown ring kind '" + kind + "'");
}

Json ring_to_json(const Ring& r) {
  switch (r.kind()) {
    case RingKind::Integers:
      return Json{{"kind", "integers"}};
    case RingKind::Rationals:
      return Json{{"kind", "rationals"}};
    case RingKind::ModN: {
      auto n = r.size();
      Json j{{"kind", "modn"}};
      if (n)
        j["n"] = *n;
      else
        j["n"] = r.describe().substr(2);  // "Z/<n>" beyond size_t
      return j;
    }
    case RingKind::Truncated: {
      Json j{{"kind", "truncated"}};
      j["base"] = ring_to_json(*r.base());
      j["t"] = r.base()->to_string(r.t_param());
      return j;
    }
  }
  throw DomainError("ring_to_json: bad ring kind");
}

LinearSetPtr set_from_json(const Json& j, const RingPtr& fallback) {
  if (!j.is_object()) throw DomainError("carrier set must be a JSON object: " + j.dump());
  if (j.contains("product")) {
    const Json& p = j.at("product");
    if (!p.is_array() || p.size() != 2)
      throw DomainError("\"product\" must hold exactly two sets");
    return LinearSet::product(set_from_json(p[0], fallback), set_from_json(p[1], fallback));
  }
  RingPtr ring = j.contains("ring") ? ring_from_json(j.at("ring")) : fallback;
  if (!ring)
    throw DomainError("carrier set gives no ring and none was supplied via --ring: " + j.dump());
  if (!j.contains("dim")) throw DomainError("carrier set needs a \"dim\": " + j.dump());
  const size_t dim = j.at("dim").get<size_t>();
  if (j.contains("denominators"))
    return LinearSet::unit_denominators(ring, dim,
                                        parse_expr_list(j.at("denominators"), "denominators"));
  if (j.contains("points")) {
    const Json& rows = j.at("points");
    if (!rows.is_array()) throw DomainError("\"points\" must be an array of coordinate rows");
    std::vector<Vec> points;
    for (const Json& row : rows) {
      if (!row.is_array() || row.size() != dim)
        throw DomainError("each point needs " + std::to_string(dim) + " coordinates: " +
                          row.dump());
      Vec p;
      for (const Json& c : row) p.push_back(parse_elem(*ring, c, "point coordinate"));
      points.push_back(std::move(p));
    }
    return LinearSet::finite_list(ring, dim, std::move(points));
  }
  return LinearSet::whole(ring, dim);
}

Json set_to_json(const LinearSet& s) {
  if (s.kind == LinearSet::Kind::Product)
    return Json{{"product", Json::array({set_to_json(*s.left), set_to_json(*s.right)})}};
  Json j;
  j["ring"] = ring_to_json(*s.ring);
  j["dim"] = s.dim;
  if (s.kind == LinearSet::Kind::UnitDenominators) {
    Json dens = Json::array();
    for (const ExprPtr& d : s.denominators) dens.push_back(print_expr(d));
    j["denominators"] = std::move(dens);
  } else if (s.kind == LinearSet::Kind::FiniteList) {
    Json rows = Json::array();
    for (const Vec& p : s.points) {
      Json row = Json::array();
      for (const RingElem& c : p) row.push_back(s.ring->to_string(c));
      rows.push_back(std::move(row));
    }
    j["points"] = std::move(rows);
  }
  return j;
}

Law law_from_json(const Json& j, const RingPtr& fallback) {
  if (!j.is_object() || !j.contains("base"))
    throw DomainError("a law file needs at least a \"base\" component list");
  if (!j.contains("domain") || !j.contains("codomain"))
    throw DomainError("a law file needs \"domain\" and \"codomain\" sets");
  LinearSetPtr domain = set_from_json(j.at("domain"), fallback);
  LinearSetPtr codomain = set_from_json(j.at("codomain"), fallback ? fallback : domain->ring);
  if (domain->ring->describe() != codomain->ring->describe())
    throw DomainError("law domain and codomain live over different rings");
  std::vector<ExprPtr> base = parse_expr_list(j.at("base"), "base");
  if (base.size() != codomain->dim)
    throw DomainError("law has " + std::to_string(base.size()) + " components for a codomain of dimension " +
                      std::to_string(codomain->dim));
  if (j.contains("factorizer")) {
    // Taken verbatim: files may describe laws whose factorizer is wrong on
    // purpose, so the axiom checks have something to catch.
    Law law;
    law.domain = std::move(domain);
    law.codomain = std::move(codomain);
    law.base = std::move(base);
    law.factorizer = parse_expr_list(j.at("factorizer"), "factorizer");
    if (law.factorizer.size() != law.codomain->dim)
      throw DomainError("factorizer component count does not match the codomain dimension");
    law.kind = j.contains("kind") ? j.at("kind").get<std::string>() : "polynomial";
    return law;
  }
  return law_on_domain(std::move(domain), std::move(codomain), std::move(base));
}

Json law_to_json(const Law& law) {
  Json j;
  j["domain"] = set_to_json(*law.domain);
  j["codomain"] = set_to_json(*law.codomain);
  Json base = Json::array();
  for (const ExprPtr& e : law.base) base.push_back(print_expr(e));
  j["base"] = std::move(base);
  Json fact = Json::array();
  for (const ExprPtr& e : law.factorizer) fact.push_back(print_expr(e));
  j["factorizer"] = std::move(fact);
  j["kind"] = law.kind;
  return j;
}

GluingPtr gluing_from_json(const Json& j, const RingPtr& fallback) {
  if (!j.is_object() || !j.contains("model") || !j.contains("charts"))
    throw DomainError("a gluing file needs \"model\" and \"charts\"");
  LinearSetPtr model = set_from_json(j.at("model"), fallback);
  GluingData g;
  g.ring = model->ring;
  g.dim = model->dim;
  const Json& charts = j.at("charts");
  if (!charts.is_array() || charts.empty())
    throw DomainError("\"charts\" must be a non-empty array of sets");
  for (const Json& c : charts) g.chart.push_back(set_from_json(c, g.ring));
  const size_t n = g.chart.size();
  g.overlap.assign(n, std::vector<LinearSetPtr>(n));
  g.transition.assign(n, std::vector<Law>(n));
  if (j.contains("overlaps")) {
    for (const Json& entry : j.at("overlaps")) {
      if (!entry.contains("i") || !entry.contains("j") || !entry.contains("domain") ||
          !entry.contains("law"))
        throw DomainError("each overlap entry needs i, j, domain, and law: " + entry.dump());
      const size_t i = entry.at("i").get<size_t>(), jj = entry.at("j").get<size_t>();
      if (i < 1 || i > n || jj < 1 || jj > n || i == jj)
        throw DomainError("overlap chart indices must be distinct and within 1.." +
                          std::to_string(n) + ": " + entry.dump());
      LinearSetPtr dom = set_from_json(entry.at("domain"), g.ring);
      const Json& lj = entry.at("law");
      Law phi;
      if (lj.is_array()) {
        phi = law_on_domain(dom, g.chart[i - 1], parse_expr_list(lj, "transition law"));
      } else if (lj.is_object() && lj.contains("base")) {
        phi = law_on_domain(dom, g.chart[i - 1], parse_expr_list(lj.at("base"), "transition law"));
      } else {
        throw DomainError("a transition law must be a component array or {\"base\": [...]}");
      }
      // Entry (i, j) declares the transition from chart j into chart i on the
      // given domain (chart-j coordinates).
      g.overlap[jj - 1][i - 1] = std::move(dom);
      g.transition[i - 1][jj - 1] = std::move(phi);
    }
  }
  return seal_gluing(std::move(g));
}

Json arrow_to_json(const Ring& r, const Arrow1& a) {
  Json j;
  Json x = Json::array(), v = Json::array();
  for (const RingElem& c : a.x) x.push_back(r.to_string(c));
  for (const RingElem& c : a.v) v.push_back(r.to_string(c));
  j["x"] = std::move(x);
  j["v"] = std::move(v);
  j["t"] = r.to_string(a.t);
  return j;
}

Json arrow_to_json(const Ring& r, const Arrow2& a) {
  Json j;
  Json x = Json::array(), v = Json::array();
  for (const RingElem& c : a.x) x.push_back(r.to_string(c));
  for (const RingElem& c : a.v) v.push_back(r.to_string(c));
  j["x"] = std::move(x);
  j["v"] = std::move(v);
  j["s"] = r.to_string(a.s);
  j["t"] = r.to_string(a.t);
  return j;
}

Json report_to_json(const SuiteReport& report) {
  Json j;
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  j["pass"] = report.pass();
  Json checks = Json::array();
  Json ces = Json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back(Json{{"check", c.name}, {"cases", c.cases}, {"failures", c.failures}});
    for (const Counterexample& ce : c.counterexamples)
      ces.push_back(Json{
          {"check", c.name}, {"inputs", ce.inputs}, {"lhs", ce.lhs}, {"rhs", ce.rhs}});
  }
  j["checks"] = std::move(checks);
  j["counterexamples"] = std::move(ces);
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("invalid JSON in '" + path + "': " + e.what());
  }
}

}  // namespace dg
