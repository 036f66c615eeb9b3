// Expression language for polynomial and rational maps: recursive-descent
// parser, canonical pretty-printer, exact evaluator over any Ring, and the
// symbolic difference-factorizer engine
//   f(x + v*T) - f(x) = F(x,v,T) * T
// where the division by the formal variable T is exact by construction.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "dg/poly.hpp"
#include "dg/ring.hpp"

namespace dg {

class ParseError : public DomainError {
public:
  ParseError(const std::string& what, size_t position)
      : DomainError(what + " at position " + std::to_string(position)), pos(position) {}
  size_t pos;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  struct Const {
    mpq_class value;
  };
  struct Var {
    std::string name;
  };
  struct Binary {
    char op;  // '+', '-', '*', '/'
    ExprPtr lhs, rhs;
  };
  struct Neg {
    ExprPtr arg;
  };
  struct Pow {
    ExprPtr base;
    unsigned exponent;
  };
  std::variant<Const, Var, Binary, Neg, Pow> node;
};

ExprPtr make_const(const mpq_class& v);
ExprPtr make_var(const std::string& name);
ExprPtr make_binary(char op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_neg(ExprPtr arg);
ExprPtr make_pow(ExprPtr base, unsigned exponent);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);  // structural

// Grammar:
//   expr  := term (("+"|"-") term)*
//   term  := unary (("*"|"/") unary)*
//   unary := "-" unary | atom ("^" NAT)?
//   atom  := NUMBER | IDENT | "(" expr ")"
// Rational literals p/q arrive through the division production and evaluate
// exactly. Negative exponents are a syntax error.
ExprPtr parse_expr(const std::string& text);

std::string print_expr(const ExprPtr& e);  // parse(print(e)) == e structurally

// Sorted list of distinct variable names appearing in e.
std::vector<std::string> expr_variables(const ExprPtr& e);

using Env = std::map<std::string, RingElem>;

// Exact evaluation; division by a non-unit reports the offending subterm.
RingElem evaluate(const ExprPtr& e, const Env& env, const Ring& r);

// Replace variables by expressions (used by law composition).
ExprPtr expr_substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& images);

// ---- symbolic engine over Q ---------------------------------------------------

// Convert to a canonical fraction in the given variable order; unknown
// variables are an error, division by a zero polynomial is an error.
Fraction expr_to_fraction(const ExprPtr& e, const std::vector<std::string>& vars);

ExprPtr fraction_to_expr(const Fraction& f, const std::vector<std::string>& vars);

// Per-component factorizer of a map given by `e` in variables `vars`
// (e.g. {"x"} or {"x1","x2"}): returns F over (vars..., v-vars..., T) with
//   e(x + v*T) - e(x) = F(x,v,T) * T  as an identity of rational functions.
// The v-variable paired with "x" is "v"; with "xi" it is "vi".
ExprPtr symbolic_difference_factorizer(const ExprPtr& e, const std::vector<std::string>& vars);

std::vector<std::string> direction_var_names(const std::vector<std::string>& vars);

// Formal derivative (power/product/quotient rules through the fraction
// engine); independent test oracle for the T=0 specialization.
ExprPtr symbolic_derivative_oracle(const ExprPtr& e, const std::string& var);

// Evaluate `e` with every variable bound to a K_t pair (x,u): the scalar
// extension of the underlying map to K_t. The second component at t=0 is the
// forward-mode derivative.
std::pair<RingElem, RingElem> scalar_extend_eval(const ExprPtr& e,
                                                 const std::map<std::string, std::pair<RingElem, RingElem>>& env,
                                                 const RingPtr& base,
                                                 const RingElem& t);

}  // namespace dg
