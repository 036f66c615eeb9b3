// Exact multivariate polynomials and fractions over Q, with a fixed
// total-degree-then-lexicographic monomial order so normal forms are unique
// and equality is structural. This is the engine behind symbolic difference
// factorizers and the formal-derivative oracle.
#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "dg/ring.hpp"

namespace dg {

// Exponent vector; index = variable slot in the owning context's order.
using Monomial = std::vector<unsigned>;

// Strict order for std::map iteration: higher total degree first, then
// lexicographically larger exponent vector first (descending canonical order).
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Poly {
public:
  Poly() = default;
  explicit Poly(size_t nvars) : nvars_(nvars) {}
  static Poly constant(size_t nvars, const mpq_class& c);
  static Poly variable(size_t nvars, size_t idx);

  size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  mpq_class constant_value() const;  // requires is_constant()

  const std::map<Monomial, mpq_class, MonomialOrder>& terms() const { return terms_; }
  void set_term(const Monomial& m, const mpq_class& c);  // overwrites; drops zeros

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const mpq_class& c) const;
  Poly pow(unsigned e) const;
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  unsigned degree_in(size_t var) const;
  unsigned total_degree() const;

  // Coefficient of var^k, as a polynomial in the same variable context
  // (exponent of `var` zeroed out).
  Poly coeff_of(size_t var, unsigned k) const;

  // Exact division by `var`; throws DomainError if any term lacks the variable.
  Poly divide_by_var(size_t var) const;

  // Substitute each variable by a polynomial over a (possibly different) context.
  Poly substitute(const std::vector<Poly>& images, size_t out_nvars) const;

  Poly derivative(size_t var) const;

  mpq_class eval_q(const std::vector<mpq_class>& point) const;
  // Evaluation in an arbitrary commutative ring via the canonical map on
  // coefficients (throws if a coefficient denominator is not a unit there).
  RingElem eval_ring(const Ring& r, const Vec& point) const;

  std::string to_string(const std::vector<std::string>& var_names) const;

private:
  size_t nvars_ = 0;
  std::map<Monomial, mpq_class, MonomialOrder> terms_;
};

// GCD of multivariate polynomials over Q (primitive PRS, recursing through a
// univariate view); result is primitive with positive leading coefficient.
Poly poly_gcd(const Poly& a, const Poly& b);

// A quotient of polynomials in canonical form: gcd-reduced, denominator
// primitive over Z with positive leading coefficient. Equality is structural.
class Fraction {
public:
  Fraction() = default;
  explicit Fraction(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.nvars(), 1)) {}
  Fraction(Poly num, Poly den);  // normalizes; throws on zero denominator

  static Fraction constant(size_t nvars, const mpq_class& c) {
    return Fraction(Poly::constant(nvars, c));
  }
  static Fraction variable(size_t nvars, size_t idx) {
    return Fraction(Poly::variable(nvars, idx));
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  size_t nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  Fraction operator+(const Fraction& o) const;
  Fraction operator-(const Fraction& o) const;
  Fraction operator-() const;
  Fraction operator*(const Fraction& o) const;
  Fraction operator/(const Fraction& o) const;  // throws on zero divisor
  Fraction pow(unsigned e) const;
  bool operator==(const Fraction& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Fraction& o) const { return !(*this == o); }

  Fraction substitute(const std::vector<Fraction>& images, size_t out_nvars) const;

  // Quotient-rule formal derivative; used as the independent test oracle.
  Fraction derivative(size_t var) const;

  std::string to_string(const std::vector<std::string>& var_names) const;

private:
  Poly num_;
  Poly den_;
};

}  // namespace dg
