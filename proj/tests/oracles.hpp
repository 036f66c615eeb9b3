// Reference implementations used to cross-check the library. Each oracle
// recomputes a value with arithmetic written here, from scratch, so that a
// defect in the library cannot hide by appearing on both sides of a
// comparison. Tests evaluate the oracle first and treat its output as the
// expected value.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <dg/expr.hpp>
#include <gmpxx.h>

namespace oracle {

// ---- plain evaluators -------------------------------------------------------
// Walk the expression tree with local arithmetic only (no dg::Ring, no
// dg::Fraction). Throw std::runtime_error on division by a non-invertible
// value or an unbound variable.

mpq_class eval_q(const dg::ExprPtr& e, const std::map<std::string, mpq_class>& env);

long eval_mod(const dg::ExprPtr& e, const std::map<std::string, long>& env, long n);

// Modular inverse by extended Euclid; throws if gcd(a, n) != 1.
long inverse_mod(long a, long n);

long normalize_mod(long a, long n);

// ---- forward-mode derivative over Q -----------------------------------------
// Dual numbers a + b*eps with eps^2 = 0, product and quotient rules spelled
// out locally. dual_eval_q(f, {x -> (x0, v0)}).der is  v0 * f'(x0).

struct DualQ {
  mpq_class val;
  mpq_class der;
};

DualQ dual_eval_q(const dg::ExprPtr& e, const std::map<std::string, DualQ>& env);

// ---- difference quotients ----------------------------------------------------
// (f(x + v*t) - f(x)) / t for invertible t, computed with the evaluators
// above. This is the defining property every factorizer must reproduce.

mpq_class difference_quotient_q(const dg::ExprPtr& e,
                                const std::map<std::string, mpq_class>& at,
                                const std::map<std::string, mpq_class>& dir,
                                const mpq_class& t);

long difference_quotient_mod(const dg::ExprPtr& e,
                             const std::map<std::string, long>& at,
                             const std::map<std::string, long>& dir, long t, long n);

// ---- truncated-polynomial multiplication -------------------------------------
// Multiply x + u*X and y + v*X as honest polynomials in X, then rewrite
// X^2 -> t*X until the degree drops below two. The canonical form (c0, c1)
// is what the closed-form product in the library must match.

std::pair<long, long> kt_mul_rewrite_mod(long n, long t, std::pair<long, long> a,
                                         std::pair<long, long> b);

std::pair<mpq_class, mpq_class> kt_mul_rewrite_q(const mpq_class& t,
                                                 std::pair<mpq_class, mpq_class> a,
                                                 std::pair<mpq_class, mpq_class> b);

}  // namespace oracle
