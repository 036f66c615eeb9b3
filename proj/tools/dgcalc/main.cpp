// dgcalc: evaluate expressions over exact rings, factorize differences,
// tabulate parametrized derivatives, apply laws to arrows, and run the
// verification suites from the command line.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dg/homcat.hpp"
#include "dg/json_io.hpp"
#include "dg/suites.hpp"

namespace {

using dg::DomainError;
using dg::Json;

// Split on commas that are not nested in parentheses; elements of K_t print
// as "(x,u)" and must survive list syntax.
std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

dg::Env parse_bindings(const dg::Ring& r, const std::string& at) {
  dg::Env env;
  for (const std::string& part : split_top_level(at)) {
    if (trim(part).empty()) continue;
    size_t eq = part.find('=');
    if (eq == std::string::npos)
      throw DomainError("binding '" + part + "' is not of the form name=value");
    env.insert_or_assign(trim(part.substr(0, eq)), r.parse(trim(part.substr(eq + 1))));
  }
  return env;
}

std::vector<dg::RingElem> parse_scalar_list(const dg::Ring& r, const std::string& text) {
  std::vector<dg::RingElem> out;
  for (const std::string& part : split_top_level(text))
    if (!trim(part).empty()) out.push_back(r.parse(trim(part)));
  if (out.empty()) throw DomainError("expected at least one value in '" + text + "'");
  return out;
}

// Pulls a coordinate vector out of --at bindings by the given names.
dg::Vec vec_from_env(const dg::Env& env, const std::vector<std::string>& names) {
  dg::Vec out;
  for (const std::string& n : names) {
    auto it = env.find(n);
    if (it == env.end()) throw DomainError("missing binding for '" + n + "' in --at");
    out.push_back(it->second);
  }
  return out;
}

// The domain dimension implied by an expression's variables: {} or {x} mean
// one dimension, {x1..xn} mean n.
size_t domain_dim_for(const dg::ExprPtr& e) {
  std::vector<std::string> used = dg::expr_variables(e);
  if (used.empty()) return 1;
  if (used.size() == 1 && used[0] == "x") return 1;
  size_t dim = 0;
  for (const std::string& name : used) {
    if (name.size() < 2 || name[0] != 'x')
      throw DomainError("expression variables must be x or x1..xn, got '" + name + "'");
    size_t idx = 0;
    for (size_t k = 1; k < name.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(name[k])))
        throw DomainError("expression variables must be x or x1..xn, got '" + name + "'");
      idx = idx * 10 + static_cast<size_t>(name[k] - '0');
    }
    if (idx == 0) throw DomainError("variable indices start at 1, got '" + name + "'");
    dim = std::max(dim, idx);
  }
  return dim;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string report_tsv(const dg::SuiteReport& rep) {
  std::ostringstream out;
  out << "suite\t" << rep.suite << "\n";
  out << "seed\t" << rep.seed << "\n";
  out << "pass\t" << (rep.pass() ? 1 : 0) << "\n";
  for (const dg::CheckResult& c : rep.checks)
    out << "check\t" << c.name << "\t" << c.cases << "\t" << c.failures << "\n";
  for (const dg::CheckResult& c : rep.checks)
    for (const dg::Counterexample& ce : c.counterexamples)
      out << "counterexample\t" << c.name << "\t" << ce.inputs << "\t" << ce.lhs << "\t" << ce.rhs
          << "\n";
  return out.str();
}

int emit_report(const dg::SuiteReport& rep, const std::string& format,
                const std::string& output) {
  emit(format == "tsv" ? report_tsv(rep) : dump(dg::report_to_json(rep)), output);
  return rep.pass() ? 0 : 1;
}

std::string join_vec(const dg::Ring& r, const dg::Vec& v) {
  std::string out;
  for (const dg::RingElem& c : v) out += (out.empty() ? "" : ",") + r.to_string(c);
  return out;
}

int cmd_eval(const std::string& expr_text, const std::string& ring_text, const std::string& at,
             const std::string& format, const std::string& output) {
  dg::RingPtr r = dg::ring_from_shorthand(ring_text);
  dg::ExprPtr e = dg::parse_expr(expr_text);
  dg::RingElem value = dg::evaluate(e, parse_bindings(*r, at), *r);
  if (format == "json")
    emit(dump(Json{{"value", r->to_string(value)}}), output);
  else
    emit(r->to_string(value) + "\n", output);
  return 0;
}

int cmd_factorize(const std::string& expr_text, const std::string& ring_text, uint64_t seed,
                  const std::string& format, const std::string& output) {
  dg::RingPtr rp = dg::ring_from_shorthand(ring_text);
  const dg::Ring& r = *rp;
  dg::ExprPtr e = dg::parse_expr(expr_text);
  const size_t dim = domain_dim_for(e);
  std::vector<std::string> vars;
  if (dim == 1) {
    vars = {"x"};
  } else {
    for (size_t i = 1; i <= dim; ++i) vars.push_back("x" + std::to_string(i));
  }
  dg::ExprPtr fact = dg::symbolic_difference_factorizer(e, vars);
  std::vector<std::string> dirs = dg::direction_var_names(vars);

  // Spot verification: f(x+vt) - f(x) against F(x,v,t)*t at three samples.
  dg::Sampler sampler(seed);
  struct Spot {
    std::string at, difference, product;
    bool ok = false;
  };
  std::vector<Spot> spots;
  bool all_ok = true;
  for (int k = 0; k < 3; ++k) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      dg::Env env;
      std::string at_text;
      for (size_t i = 0; i < dim; ++i) {
        dg::RingElem x = sampler.sample(r), v = sampler.sample(r);
        env.emplace(vars[i], x);
        env.emplace(dirs[i], v);
        at_text += vars[i] + "=" + r.to_string(x) + "," + dirs[i] + "=" + r.to_string(v) + ",";
      }
      dg::RingElem t = sampler.sample(r);
      env.emplace("T", t);
      at_text += "t=" + r.to_string(t);
      try {
        dg::Env shifted = env;
        for (size_t i = 0; i < dim; ++i)
          shifted.insert_or_assign(vars[i],
                                   r.add(env.at(vars[i]), r.mul(env.at(dirs[i]), t)));
        dg::RingElem difference = r.sub(dg::evaluate(e, shifted, r), dg::evaluate(e, env, r));
        dg::RingElem product = r.mul(dg::evaluate(fact, env, r), t);
        Spot s{at_text, r.to_string(difference), r.to_string(product),
               r.eq(difference, product)};
        all_ok = all_ok && s.ok;
        spots.push_back(std::move(s));
        break;
      } catch (const DomainError&) {
        // pole or missing footprint; resample
      }
    }
  }

  if (format == "json") {
    Json j;
    j["factorizer"] = dg::print_expr(fact);
    Json checks = Json::array();
    for (const Spot& s : spots)
      checks.push_back(
          Json{{"at", s.at}, {"difference", s.difference}, {"product", s.product}});
    j["verification"] = std::move(checks);
    j["pass"] = all_ok;
    emit(dump(j), output);
  } else {
    std::ostringstream out;
    out << dg::print_expr(fact) << "\n";
    for (const Spot& s : spots)
      out << "verify\t" << s.at << "\t" << s.difference << "\t" << s.product << "\t"
          << (s.ok ? "ok" : "MISMATCH") << "\n";
    emit(out.str(), output);
  }
  return all_ok ? 0 : 1;
}

int cmd_diff(const std::string& expr_text, const std::string& ring_text, const std::string& at,
             const std::string& t_text, const std::string& format, const std::string& output) {
  dg::RingPtr rp = dg::ring_from_shorthand(ring_text);
  const dg::Ring& r = *rp;
  dg::ExprPtr e = dg::parse_expr(expr_text);
  const size_t dim = domain_dim_for(e);
  std::vector<std::string> vars;
  if (dim == 1) {
    vars = {"x"};
  } else {
    for (size_t i = 1; i <= dim; ++i) vars.push_back("x" + std::to_string(i));
  }
  dg::ExprPtr fact = dg::symbolic_difference_factorizer(e, vars);
  dg::Env env = parse_bindings(*rp, at);
  for (const std::string& n : vars)
    if (!env.count(n)) throw DomainError("missing binding for '" + n + "' in --at");
  for (const std::string& n : dg::direction_var_names(vars))
    if (!env.count(n)) throw DomainError("missing binding for '" + n + "' in --at");

  std::vector<std::pair<std::string, std::string>> rows;
  for (const dg::RingElem& t : parse_scalar_list(r, t_text)) {
    dg::Env at_t = env;
    at_t.insert_or_assign("T", t);
    rows.emplace_back(r.to_string(t), r.to_string(dg::evaluate(fact, at_t, r)));
  }
  if (format == "json") {
    Json j = Json::array();
    for (const auto& [t, value] : rows) j.push_back(Json{{"t", t}, {"value", value}});
    emit(dump(Json{{"rows", std::move(j)}}), output);
  } else {
    std::ostringstream out;
    for (const auto& [t, value] : rows) out << t << "\t" << value << "\n";
    emit(out.str(), output);
  }
  return 0;
}

int cmd_apply(const std::string& law_path, const std::string& ring_text, const std::string& at,
              const std::string& t_text, const std::string& format, const std::string& output) {
  dg::RingPtr fallback = ring_text.empty() ? nullptr : dg::ring_from_shorthand(ring_text);
  dg::Law law = dg::law_from_json(dg::load_json_file(law_path), fallback);
  const dg::Ring& r = *law.domain->ring;
  dg::Env env = parse_bindings(r, at);
  std::vector<std::string> vars = law.domain->var_names();
  dg::Vec x = vec_from_env(env, vars);
  dg::Vec v = vec_from_env(env, dg::direction_var_names(vars));
  auto s_it = env.find("s");

  Json results = Json::array();
  std::ostringstream tsv;
  for (const dg::RingElem& t : parse_scalar_list(r, t_text)) {
    if (s_it != env.end()) {
      dg::Arrow2 image =
          dg::apply2(law, dg::make_arrow2(law.domain, x, v, s_it->second, t));
      results.push_back(dg::arrow_to_json(r, image));
      tsv << join_vec(r, image.x) << "\t" << join_vec(r, image.v) << "\t"
          << r.to_string(image.s) << "\t" << r.to_string(image.t) << "\n";
    } else {
      dg::Arrow1 image = dg::apply1(law, dg::make_arrow1(law.domain, x, v, t));
      results.push_back(dg::arrow_to_json(r, image));
      tsv << join_vec(r, image.x) << "\t" << join_vec(r, image.v) << "\t" << r.to_string(image.t)
          << "\n";
    }
  }
  if (format == "tsv")
    emit(tsv.str(), output);
  else
    emit(dump(results.size() == 1 ? results[0] : Json{{"arrows", std::move(results)}}), output);
  return 0;
}

dg::RingPtr builtin_ring(const std::string& ring_text, const char* fallback) {
  return dg::ring_from_shorthand(ring_text.empty() ? fallback : ring_text);
}

void require_small(const dg::Ring& r, size_t tuple_size, const std::string& what) {
  if (!dg::prefer_exhaustive(r, tuple_size))
    throw DomainError(what + " enumerates the carrier exhaustively and needs a small finite ring, got " +
                      r.describe());
}

int cmd_check(const std::string& target, const std::string& file, const std::string& ring_text,
              uint64_t seed, const std::string& format, const std::string& output) {
  dg::Sampler sampler(seed);
  dg::SuiteReport report;
  if (target == "law") {
    if (file.empty()) throw DomainError("check law needs a law file");
    dg::RingPtr fallback = ring_text.empty() ? nullptr : dg::ring_from_shorthand(ring_text);
    dg::Law law = dg::law_from_json(dg::load_json_file(file), fallback);
    report = dg::check_law_axioms(law, sampler);
  } else if (target == "gluing") {
    if (file.empty()) throw DomainError("check gluing needs a gluing file");
    dg::RingPtr fallback = ring_text.empty() ? nullptr : dg::ring_from_shorthand(ring_text);
    dg::GluingPtr g = dg::gluing_from_json(dg::load_json_file(file), fallback);
    report = dg::validate_gluing(g, sampler);
  } else if (target.rfind("builtin:", 0) == 0) {
    const std::string which = target.substr(8);
    if (which == "groupoid") {
      dg::RingPtr r = builtin_ring(ring_text, "Z5");
      require_small(*r, 3, "builtin:groupoid");
      report = dg::run_prolong1_suite(dg::LinearSet::whole(r, 1));
    } else if (which == "doublecat") {
      dg::RingPtr r = builtin_ring(ring_text, "Z3");
      require_small(*r, 4, "builtin:doublecat");
      report = dg::run_prolong2_suite(dg::LinearSet::whole(r, 1));
    } else if (which == "pregroupoid") {
      dg::RingPtr r = builtin_ring(ring_text, "Z5");
      require_small(*r, 3, "builtin:pregroupoid");
      report = dg::run_prolong_pregroupoid_suite(dg::LinearSet::whole(r, 1));
    } else if (which == "scaled-action") {
      dg::RingPtr r = builtin_ring(ring_text, "Z5");
      require_small(*r, 3, "builtin:scaled-action");
      report = dg::run_scaled_action_suite(r);
    } else {
      throw DomainError("unknown builtin suite '" + which +
                        "'; expected groupoid, doublecat, pregroupoid, or scaled-action");
    }
  } else {
    throw DomainError("unknown check target '" + target +
                      "'; expected law, gluing, or builtin:<suite>");
  }
  return emit_report(report, format, output);
}

int cmd_manifold(const std::string& file, const std::string& ring_text, const std::string& at,
                 const std::string& t_text, int chart, int to_chart, uint64_t seed,
                 const std::string& format, const std::string& output) {
  dg::RingPtr fallback = ring_text.empty() ? nullptr : dg::ring_from_shorthand(ring_text);
  dg::GluingPtr g = dg::gluing_from_json(dg::load_json_file(file), fallback);
  if (at.empty()) {
    dg::Sampler sampler(seed);
    return emit_report(dg::validate_gluing(g, sampler), format, output);
  }
  // Transport mode: carry the arrow described by --at/--t into another chart.
  if (chart < 1 || to_chart < 1)
    throw DomainError("transport needs --chart and --to (1-based chart indices)");
  const dg::Ring& r = *g->ring;
  dg::Env env = parse_bindings(r, at);
  std::vector<std::string> vars = g->chart[static_cast<size_t>(chart) - 1]->var_names();
  dg::Vec x = vec_from_env(env, vars);
  dg::Vec v = vec_from_env(env, dg::direction_var_names(vars));
  std::vector<dg::RingElem> ts = parse_scalar_list(r, t_text);
  if (ts.size() != 1) throw DomainError("transport needs exactly one --t value");
  dg::ManifoldArrow a =
      dg::make_manifold_arrow(g, static_cast<size_t>(chart) - 1, std::move(x), std::move(v), ts[0]);
  dg::ManifoldArrow moved = dg::transport_arrow(g, a, static_cast<size_t>(to_chart) - 1);
  Json j;
  j["chart"] = moved.chart + 1;
  Json arrow = dg::arrow_to_json(r, moved.arrow);
  j["x"] = arrow["x"];
  j["v"] = arrow["v"];
  j["t"] = arrow["t"];
  if (format == "tsv") {
    std::ostringstream out;
    out << (moved.chart + 1) << "\t" << join_vec(r, moved.arrow.x) << "\t"
        << join_vec(r, moved.arrow.v) << "\t" << r.to_string(moved.arrow.t) << "\n";
    emit(out.str(), output);
  } else {
    emit(dump(j), output);
  }
  return 0;
}

int cmd_homcat(const std::string& outer_path, const std::string& inner_path,
               const std::string& ring_text, uint64_t seed, const std::string& format,
               const std::string& output) {
  dg::RingPtr fallback = ring_text.empty() ? nullptr : dg::ring_from_shorthand(ring_text);
  dg::HomElement outer = dg::hom_from_law(dg::law_from_json(dg::load_json_file(outer_path), fallback));
  dg::HomElement inner = dg::hom_from_law(dg::law_from_json(dg::load_json_file(inner_path), fallback));
  dg::Sampler sampler(seed);
  return emit_report(dg::check_hom_star_structure(outer, inner, sampler), format, output);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact first-order difference calculus over commutative rings"};
  app.require_subcommand(1);

  std::string ring, at, t_list, format, output, expr_text, file_a, file_b, target;
  int chart = 0, to_chart = 0;
  uint64_t seed = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format: json or tsv")
        ->check(CLI::IsMember({"json", "tsv"}));
    cmd->add_option("--output", output, "write the result to this file instead of stdout");
  };
  auto or_default = [](const std::string& value, const char* fallback) {
    return value.empty() ? std::string(fallback) : value;
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate an expression at bindings");
  eval->add_option("expr", expr_text, "expression, e.g. \"x^3+1\"")->required();
  eval->add_option("--ring", ring, "ring shorthand: Q, Z, Zn, Kt(base,t); default Q");
  eval->add_option("--at", at, "comma-separated bindings, e.g. \"x=2\"");
  add_common(eval);

  CLI::App* factorize = app.add_subcommand("factorize", "print the difference factorizer");
  factorize->add_option("expr", expr_text, "expression in x (or x1..xn)")->required();
  factorize->add_option("--ring", ring, "ring shorthand; default Q");
  factorize->add_option("--seed", seed, "sampler seed for the spot verification");
  add_common(factorize);

  CLI::App* diff = app.add_subcommand("diff", "tabulate f1(x,v,t) over the requested t values");
  diff->add_option("expr", expr_text, "expression in x (or x1..xn)")->required();
  diff->add_option("--ring", ring, "ring shorthand; default Q");
  diff->add_option("--at", at, "bindings for x and v, e.g. \"x=1,v=1\"")->required();
  diff->add_option("--t", t_list, "comma-separated scale values; default 0,1");
  add_common(diff);

  CLI::App* apply = app.add_subcommand("apply", "apply a law file to an arrow");
  apply->add_option("law", file_a, "law JSON file")->required()->check(CLI::ExistingFile);
  apply->add_option("--ring", ring, "ring shorthand for files that omit one");
  apply->add_option("--at", at, "bindings for x, v (and s for a two-scale arrow)")->required();
  apply->add_option("--t", t_list, "scale value(s); default 1");
  add_common(apply);

  CLI::App* check = app.add_subcommand("check", "run a verification suite");
  check->add_option("target", target, "law | gluing | builtin:<suite>")->required();
  check->add_option("file", file_a, "law or gluing JSON file")->check(CLI::ExistingFile);
  check->add_option("--ring", ring, "ring shorthand (builtin carrier or file fallback)");
  check->add_option("--seed", seed, "sampler seed");
  add_common(check);

  CLI::App* manifold = app.add_subcommand("manifold", "validate gluing data or transport arrows");
  manifold->add_option("gluing", file_a, "gluing JSON file")->required()->check(CLI::ExistingFile);
  manifold->add_option("--ring", ring, "ring shorthand for files that omit one");
  manifold->add_option("--at", at, "arrow bindings; triggers transport mode");
  manifold->add_option("--t", t_list, "scale value for the transported arrow; default 1");
  manifold->add_option("--chart", chart, "source chart (1-based)");
  manifold->add_option("--to", to_chart, "destination chart (1-based)");
  manifold->add_option("--seed", seed, "sampler seed");
  add_common(manifold);

  CLI::App* homcat = app.add_subcommand("homcat", "check the pointwise star of two law files");
  homcat->add_option("outer", file_a, "outer law JSON file")->required()->check(CLI::ExistingFile);
  homcat->add_option("inner", file_b, "inner law JSON file")->required()->check(CLI::ExistingFile);
  homcat->add_option("--ring", ring, "ring shorthand for files that omit one");
  homcat->add_option("--seed", seed, "sampler seed");
  add_common(homcat);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed())
      return cmd_eval(expr_text, or_default(ring, "Q"), at, or_default(format, "tsv"), output);
    if (factorize->parsed())
      return cmd_factorize(expr_text, or_default(ring, "Q"), seed, or_default(format, "tsv"), output);
    if (diff->parsed())
      return cmd_diff(expr_text, or_default(ring, "Q"), at, or_default(t_list, "0,1"),
                      or_default(format, "tsv"), output);
    if (apply->parsed())
      return cmd_apply(file_a, ring, at, or_default(t_list, "1"), or_default(format, "json"),
                       output);
    if (check->parsed())
      return cmd_check(target, file_a, ring, seed, or_default(format, "json"), output);
    if (manifold->parsed())
      return cmd_manifold(file_a, ring, at, or_default(t_list, "1"), chart, to_chart, seed,
                          or_default(format, "json"), output);
    if (homcat->parsed())
      return cmd_homcat(file_a, file_b, ring, seed, or_default(format, "json"), output);
  } catch (const dg::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
