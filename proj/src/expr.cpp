#include "dg/expr.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace dg {

ExprPtr make_const(const mpq_class& v) {
  Expr e;
  mpq_class c = v;
  c.canonicalize();
  e.node = Expr::Const{c};
  return std::make_shared<Expr>(std::move(e));
}

ExprPtr make_var(const std::string& name) {
  Expr e;
  e.node = Expr::Var{name};
  return std::make_shared<Expr>(std::move(e));
}

ExprPtr make_binary(char op, ExprPtr lhs, ExprPtr rhs) {
  Expr e;
  e.node = Expr::Binary{op, std::move(lhs), std::move(rhs)};
  return std::make_shared<Expr>(std::move(e));
}

ExprPtr make_neg(ExprPtr arg) {
  Expr e;
  e.node = Expr::Neg{std::move(arg)};
  return std::make_shared<Expr>(std::move(e));
}

ExprPtr make_pow(ExprPtr base, unsigned exponent) {
  Expr e;
  e.node = Expr::Pow{std::move(base), exponent};
  return std::make_shared<Expr>(std::move(e));
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  if (const auto* ca = std::get_if<Expr::Const>(&a->node))
    return ca->value == std::get<Expr::Const>(b->node).value;
  if (const auto* va = std::get_if<Expr::Var>(&a->node))
    return va->name == std::get<Expr::Var>(b->node).name;
  if (const auto* ba = std::get_if<Expr::Binary>(&a->node)) {
    const auto& bb = std::get<Expr::Binary>(b->node);
    return ba->op == bb.op && expr_equal(ba->lhs, bb.lhs) && expr_equal(ba->rhs, bb.rhs);
  }
  if (const auto* na = std::get_if<Expr::Neg>(&a->node))
    return expr_equal(na->arg, std::get<Expr::Neg>(b->node).arg);
  const auto& pa = std::get<Expr::Pow>(a->node);
  const auto& pb = std::get<Expr::Pow>(b->node);
  return pa.exponent == pb.exponent && expr_equal(pa.base, pb.base);
}

// ---- parser -------------------------------------------------------------------

namespace {

class Parser {
public:
  explicit Parser(const std::string& text) : text_(text) {}

  ExprPtr run() {
    ExprPtr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

private:
  const std::string& text_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr parse_sum() {
    ExprPtr e = parse_term();
    while (true) {
      char c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        e = make_binary(c, e, parse_term());
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_unary();
    while (true) {
      char c = peek();
      if (c == '*' || c == '/') {
        ++pos_;
        ExprPtr rhs = parse_unary();
        // Fold rational literals p/q into a single constant so that printing
        // and reparsing is structurally stable.
        const auto* cl = std::get_if<Expr::Const>(&e->node);
        const auto* cr = std::get_if<Expr::Const>(&rhs->node);
        if (c == '/' && cl && cr && cr->value != 0) {
          e = make_const(cl->value / cr->value);
        } else {
          e = make_binary(c, e, rhs);
        }
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_unary() {
    if (consume('-')) {
      ExprPtr arg = parse_unary();
      if (const auto* c = std::get_if<Expr::Const>(&arg->node)) return make_const(-c->value);
      return make_neg(arg);
    }
    ExprPtr e = parse_atom();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '-')
        throw ParseError("negative exponent", pos_);
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError("expected natural-number exponent", pos_);
      unsigned long exp = 0;
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        exp = exp * 10 + static_cast<unsigned long>(text_[pos_] - '0');
        if (exp > 1000000) throw ParseError("exponent too large", start);
        ++pos_;
      }
      e = make_pow(e, static_cast<unsigned>(exp));
    }
    return e;
  }

  ExprPtr parse_atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_sum();
      if (!consume(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits += text_[pos_];
        ++pos_;
      }
      return make_const(mpq_class(mpz_class(digits)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        name += text_[pos_];
        ++pos_;
      }
      return make_var(name);
    }
    throw ParseError(c == '\0' ? std::string("unexpected end of input")
                               : std::string("unexpected character '") + c + "'",
                     pos_);
  }
};

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).run(); }

// ---- printer ------------------------------------------------------------------

namespace {

// Binding strength: sum = 0, product = 1, unary minus = 2, power = 3,
// atoms = 4. A node printed in a context demanding more than its own level
// gets parentheses; that makes parse(print(e)) == e structurally.
int level_of(const ExprPtr& e) {
  if (const auto* c = std::get_if<Expr::Const>(&e->node))
    return (c->value < 0 || c->value.get_den() != 1) ? 0 : 4;
  if (std::holds_alternative<Expr::Var>(e->node)) return 4;
  if (std::holds_alternative<Expr::Neg>(e->node)) return 2;
  if (std::holds_alternative<Expr::Pow>(e->node)) return 3;
  const auto& b = std::get<Expr::Binary>(e->node);
  return (b.op == '+' || b.op == '-') ? 0 : 1;
}

void print_node(std::ostringstream& out, const ExprPtr& e, int context) {
  bool needs = level_of(e) < context;
  if (needs) out << "(";
  if (const auto* c = std::get_if<Expr::Const>(&e->node)) {
    out << c->value.get_str();
  } else if (const auto* v = std::get_if<Expr::Var>(&e->node)) {
    out << v->name;
  } else if (const auto* n = std::get_if<Expr::Neg>(&e->node)) {
    out << "-";
    print_node(out, n->arg, 2);
  } else if (const auto* p = std::get_if<Expr::Pow>(&e->node)) {
    // The grammar allows at most one '^' per atom, so a power base that is
    // itself a power must be parenthesized; demanding an atom does that.
    print_node(out, p->base, 4);
    out << "^" << p->exponent;
  } else {
    const auto& b = std::get<Expr::Binary>(e->node);
    int my_level = (b.op == '+' || b.op == '-') ? 0 : 1;
    print_node(out, b.lhs, my_level);
    out << " " << b.op << " ";
    // Right operand of - or / must bind strictly tighter to round-trip.
    print_node(out, b.rhs, my_level + 1);
  }
  if (needs) out << ")";
}

}  // namespace

std::string print_expr(const ExprPtr& e) {
  std::ostringstream out;
  print_node(out, e, 0);
  return out.str();
}

// ---- traversal ----------------------------------------------------------------

namespace {

void collect_vars(const ExprPtr& e, std::set<std::string>& names) {
  if (const auto* v = std::get_if<Expr::Var>(&e->node)) {
    names.insert(v->name);
  } else if (const auto* b = std::get_if<Expr::Binary>(&e->node)) {
    collect_vars(b->lhs, names);
    collect_vars(b->rhs, names);
  } else if (const auto* n = std::get_if<Expr::Neg>(&e->node)) {
    collect_vars(n->arg, names);
  } else if (const auto* p = std::get_if<Expr::Pow>(&e->node)) {
    collect_vars(p->base, names);
  }
}

}  // namespace

std::vector<std::string> expr_variables(const ExprPtr& e) {
  std::set<std::string> names;
  collect_vars(e, names);
  return {names.begin(), names.end()};
}

RingElem evaluate(const ExprPtr& e, const Env& env, const Ring& r) {
  if (const auto* c = std::get_if<Expr::Const>(&e->node)) return r.from_rational(c->value);
  if (const auto* v = std::get_if<Expr::Var>(&e->node)) {
    auto it = env.find(v->name);
    if (it == env.end()) throw DomainError("unbound variable '" + v->name + "'");
    return it->second;
  }
  if (const auto* n = std::get_if<Expr::Neg>(&e->node)) return r.neg(evaluate(n->arg, env, r));
  if (const auto* p = std::get_if<Expr::Pow>(&e->node)) {
    RingElem base = evaluate(p->base, env, r);
    RingElem acc = r.one();
    for (unsigned i = 0; i < p->exponent; ++i) acc = r.mul(acc, base);
    return acc;
  }
  const auto& b = std::get<Expr::Binary>(e->node);
  RingElem lhs = evaluate(b.lhs, env, r);
  RingElem rhs = evaluate(b.rhs, env, r);
  switch (b.op) {
    case '+':
      return r.add(lhs, rhs);
    case '-':
      return r.sub(lhs, rhs);
    case '*':
      return r.mul(lhs, rhs);
    case '/':
      return r.div(lhs, rhs);
    default:
      throw DomainError("unknown operator");
  }
}

ExprPtr expr_substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& images) {
  if (std::holds_alternative<Expr::Const>(e->node)) return e;
  if (const auto* v = std::get_if<Expr::Var>(&e->node)) {
    auto it = images.find(v->name);
    return it == images.end() ? e : it->second;
  }
  if (const auto* n = std::get_if<Expr::Neg>(&e->node))
    return make_neg(expr_substitute(n->arg, images));
  if (const auto* p = std::get_if<Expr::Pow>(&e->node))
    return make_pow(expr_substitute(p->base, images), p->exponent);
  const auto& b = std::get<Expr::Binary>(e->node);
  return make_binary(b.op, expr_substitute(b.lhs, images), expr_substitute(b.rhs, images));
}

// ---- symbolic engine ------------------------------------------------------------

Fraction expr_to_fraction(const ExprPtr& e, const std::vector<std::string>& vars) {
  size_t n = vars.size();
  if (const auto* c = std::get_if<Expr::Const>(&e->node)) return Fraction::constant(n, c->value);
  if (const auto* v = std::get_if<Expr::Var>(&e->node)) {
    for (size_t i = 0; i < n; ++i)
      if (vars[i] == v->name) return Fraction::variable(n, i);
    throw DomainError("variable '" + v->name + "' is not in the variable context");
  }
  if (const auto* neg = std::get_if<Expr::Neg>(&e->node)) return -expr_to_fraction(neg->arg, vars);
  if (const auto* p = std::get_if<Expr::Pow>(&e->node))
    return expr_to_fraction(p->base, vars).pow(p->exponent);
  const auto& b = std::get<Expr::Binary>(e->node);
  Fraction lhs = expr_to_fraction(b.lhs, vars);
  Fraction rhs = expr_to_fraction(b.rhs, vars);
  switch (b.op) {
    case '+':
      return lhs + rhs;
    case '-':
      return lhs - rhs;
    case '*':
      return lhs * rhs;
    case '/':
      if (rhs.is_zero()) throw DomainError("division by the zero polynomial");
      return lhs / rhs;
    default:
      throw DomainError("unknown operator");
  }
}

namespace {

ExprPtr poly_to_expr(const Poly& p, const std::vector<std::string>& vars) {
  if (p.is_zero()) return make_const(0);
  ExprPtr acc;
  for (const auto& [m, c] : p.terms()) {
    mpq_class coeff = c;
    bool negative = coeff < 0;
    if (negative) coeff = -coeff;
    ExprPtr term;
    unsigned deg = 0;
    for (unsigned ee : m) deg += ee;
    if (coeff != 1 || deg == 0) term = make_const(coeff);
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      ExprPtr factor = make_var(vars[i]);
      if (m[i] > 1) factor = make_pow(factor, m[i]);
      term = term ? make_binary('*', term, factor) : factor;
    }
    if (!acc) {
      // A leading negative constant becomes a signed literal (the parser folds
      // "-c" to one node, so Neg(Const) would not reparse structurally).
      if (negative && deg == 0)
        acc = make_const(-coeff);
      else
        acc = negative ? make_neg(term) : term;
    } else {
      acc = make_binary(negative ? '-' : '+', acc, term);
    }
  }
  return acc;
}

}  // namespace

ExprPtr fraction_to_expr(const Fraction& f, const std::vector<std::string>& vars) {
  ExprPtr num = poly_to_expr(f.num(), vars);
  if (f.is_polynomial()) {
    mpq_class d = f.den().constant_value();
    if (d == 1) return num;
    return make_binary('/', num, make_const(d));
  }
  return make_binary('/', num, poly_to_expr(f.den(), vars));
}

std::vector<std::string> direction_var_names(const std::vector<std::string>& vars) {
  std::vector<std::string> out;
  out.reserve(vars.size());
  for (const std::string& x : vars) {
    if (x == "x") {
      out.push_back("v");
    } else if (x.size() > 1 && x[0] == 'x') {
      out.push_back("v" + x.substr(1));
    } else {
      out.push_back("v_" + x);
    }
  }
  return out;
}

ExprPtr symbolic_difference_factorizer(const ExprPtr& e, const std::vector<std::string>& vars) {
  std::vector<std::string> ctx = vars;
  std::vector<std::string> dirs = direction_var_names(vars);
  ctx.insert(ctx.end(), dirs.begin(), dirs.end());
  ctx.push_back("T");
  size_t n = vars.size();
  size_t total = ctx.size();
  size_t t_idx = total - 1;

  Fraction f = expr_to_fraction(e, ctx);

  // Images sending x_i -> x_i + v_i * T.
  std::vector<Fraction> shifted;
  shifted.reserve(total);
  for (size_t i = 0; i < total; ++i) shifted.push_back(Fraction::variable(total, i));
  for (size_t i = 0; i < n; ++i) {
    shifted[i] = Fraction(Poly::variable(total, i) +
                          Poly::variable(total, n + i) * Poly::variable(total, t_idx));
  }

  Fraction diff = f.substitute(shifted, total) - f;
  // The difference vanishes identically at T = 0, so T divides the numerator;
  // peel it off the coefficient array directly.
  if (diff.is_zero()) return make_const(0);
  if (!diff.num().coeff_of(t_idx, 0).is_zero())
    throw DomainError("difference is not divisible by the scale variable");
  Fraction factorizer(diff.num().divide_by_var(t_idx), diff.den());
  return fraction_to_expr(factorizer, ctx);
}

ExprPtr symbolic_derivative_oracle(const ExprPtr& e, const std::string& var) {
  std::vector<std::string> ctx = expr_variables(e);
  if (std::find(ctx.begin(), ctx.end(), var) == ctx.end()) ctx.push_back(var);
  std::sort(ctx.begin(), ctx.end());
  size_t idx = static_cast<size_t>(std::find(ctx.begin(), ctx.end(), var) - ctx.begin());
  Fraction f = expr_to_fraction(e, ctx);
  return fraction_to_expr(f.derivative(idx), ctx);
}

std::pair<RingElem, RingElem> scalar_extend_eval(
    const ExprPtr& e, const std::map<std::string, std::pair<RingElem, RingElem>>& env,
    const RingPtr& base, const RingElem& t) {
  RingPtr ext = Ring::truncated(base, t);
  Env lifted;
  for (const auto& [name, pair] : env) lifted.emplace(name, ext->make_pair(pair.first, pair.second));
  RingElem result = evaluate(e, lifted, *ext);
  auto split = ext->split_pair(result);
  return {split.first, split.second};
}

}  // namespace dg
