#include "oracles.hpp"

#include <numeric>

namespace oracle {

using dg::Expr;
using dg::ExprPtr;

mpq_class eval_q(const ExprPtr& e, const std::map<std::string, mpq_class>& env) {
  if (const auto* c = std::get_if<Expr::Const>(&e->node)) return c->value;
  if (const auto* v = std::get_if<Expr::Var>(&e->node)) {
    auto it = env.find(v->name);
    if (it == env.end()) throw std::runtime_error("unbound variable " + v->name);
    return it->second;
  }
  if (const auto* b = std::get_if<Expr::Binary>(&e->node)) {
    mpq_class l = eval_q(b->lhs, env), r = eval_q(b->rhs, env);
    switch (b->op) {
      case '+': return l + r;
      case '-': return l - r;
      case '*': return l * r;
      case '/':
        if (r == 0) throw std::runtime_error("division by zero");
        return l / r;
    }
    throw std::runtime_error("bad operator");
  }
  if (const auto* n = std::get_if<Expr::Neg>(&e->node)) return -eval_q(n->arg, env);
  const auto& p = std::get<Expr::Pow>(e->node);
  mpq_class base = eval_q(p.base, env), acc = 1;
  for (unsigned i = 0; i < p.exponent; ++i) acc *= base;
  return acc;
}

long normalize_mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

long inverse_mod(long a, long n) {
  long r0 = n, r1 = normalize_mod(a, n), s0 = 0, s1 = 1;
  while (r1 != 0) {
    long q = r0 / r1;
    long r2 = r0 - q * r1, s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) throw std::runtime_error("not invertible mod n");
  return normalize_mod(s0, n);
}

long eval_mod(const ExprPtr& e, const std::map<std::string, long>& env, long n) {
  if (const auto* c = std::get_if<Expr::Const>(&e->node)) {
    // Rational constant p/q: q must be invertible mod n.
    long p = normalize_mod(c->value.get_num().get_si(), n);
    long q = c->value.get_den().get_si();
    return q == 1 ? p : normalize_mod(p * inverse_mod(q, n), n);
  }
  if (const auto* v = std::get_if<Expr::Var>(&e->node)) {
    auto it = env.find(v->name);
    if (it == env.end()) throw std::runtime_error("unbound variable " + v->name);
    return normalize_mod(it->second, n);
  }
  if (const auto* b = std::get_if<Expr::Binary>(&e->node)) {
    long l = eval_mod(b->lhs, env, n), r = eval_mod(b->rhs, env, n);
    switch (b->op) {
      case '+': return normalize_mod(l + r, n);
      case '-': return normalize_mod(l - r, n);
      case '*': return normalize_mod(l * r, n);
      case '/': return normalize_mod(l * inverse_mod(r, n), n);
    }
    throw std::runtime_error("bad operator");
  }
  if (const auto* g = std::get_if<Expr::Neg>(&e->node))
    return normalize_mod(-eval_mod(g->arg, env, n), n);
  const auto& p = std::get<Expr::Pow>(e->node);
  long base = eval_mod(p.base, env, n), acc = 1;
  for (unsigned i = 0; i < p.exponent; ++i) acc = normalize_mod(acc * base, n);
  return acc;
}

DualQ dual_eval_q(const ExprPtr& e, const std::map<std::string, DualQ>& env) {
  if (const auto* c = std::get_if<Expr::Const>(&e->node)) return {c->value, 0};
  if (const auto* v = std::get_if<Expr::Var>(&e->node)) {
    auto it = env.find(v->name);
    if (it == env.end()) throw std::runtime_error("unbound variable " + v->name);
    return it->second;
  }
  if (const auto* b = std::get_if<Expr::Binary>(&e->node)) {
    DualQ l = dual_eval_q(b->lhs, env), r = dual_eval_q(b->rhs, env);
    switch (b->op) {
      case '+': return {l.val + r.val, l.der + r.der};
      case '-': return {l.val - r.val, l.der - r.der};
      case '*': return {l.val * r.val, l.val * r.der + l.der * r.val};
      case '/':
        if (r.val == 0) throw std::runtime_error("division by zero");
        return {l.val / r.val, (l.der * r.val - l.val * r.der) / (r.val * r.val)};
    }
    throw std::runtime_error("bad operator");
  }
  if (const auto* g = std::get_if<Expr::Neg>(&e->node)) {
    DualQ a = dual_eval_q(g->arg, env);
    return {-a.val, -a.der};
  }
  const auto& p = std::get<Expr::Pow>(e->node);
  DualQ base = dual_eval_q(p.base, env), acc{1, 0};
  for (unsigned i = 0; i < p.exponent; ++i)
    acc = {acc.val * base.val, acc.val * base.der + acc.der * base.val};
  return acc;
}

mpq_class difference_quotient_q(const ExprPtr& e, const std::map<std::string, mpq_class>& at,
                                const std::map<std::string, mpq_class>& dir,
                                const mpq_class& t) {
  if (t == 0) throw std::runtime_error("difference quotient needs invertible t");
  std::map<std::string, mpq_class> shifted = at;
  for (const auto& [name, v] : dir) shifted[name] = at.at(name) + v * t;
  return (eval_q(e, shifted) - eval_q(e, at)) / t;
}

long difference_quotient_mod(const ExprPtr& e, const std::map<std::string, long>& at,
                             const std::map<std::string, long>& dir, long t, long n) {
  std::map<std::string, long> shifted = at;
  for (const auto& [name, v] : dir) shifted[name] = normalize_mod(at.at(name) + v * t, n);
  long diff = normalize_mod(eval_mod(e, shifted, n) - eval_mod(e, at, n), n);
  return normalize_mod(diff * inverse_mod(t, n), n);
}

std::pair<long, long> kt_mul_rewrite_mod(long n, long t, std::pair<long, long> a,
                                         std::pair<long, long> b) {
  // (a0 + a1 X)(b0 + b1 X) expanded in X:
  long c0 = normalize_mod(a.first * b.first, n);
  long c1 = normalize_mod(a.first * b.second + a.second * b.first, n);
  long c2 = normalize_mod(a.second * b.second, n);
  // X^2 -> t X
  c1 = normalize_mod(c1 + t * c2, n);
  return {c0, c1};
}

std::pair<mpq_class, mpq_class> kt_mul_rewrite_q(const mpq_class& t,
                                                 std::pair<mpq_class, mpq_class> a,
                                                 std::pair<mpq_class, mpq_class> b) {
  mpq_class c0 = a.first * b.first;
  mpq_class c1 = a.first * b.second + a.second * b.first;
  mpq_class c2 = a.second * b.second;
  c1 += t * c2;
  return {c0, c1};
}

}  // namespace oracle
