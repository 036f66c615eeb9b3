#include "dg/poly.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

namespace dg {

namespace {

unsigned monomial_degree(const Monomial& m) {
  unsigned d = 0;
  for (unsigned e : m) d += e;
  return d;
}

}  // namespace

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = monomial_degree(a), db = monomial_degree(b);
  if (da != db) return da > db;
  return a > b;  // lexicographically larger exponent vector first
}

Poly Poly::constant(size_t nvars, const mpq_class& c) {
  Poly p(nvars);
  if (c != 0) p.terms_.emplace(Monomial(nvars, 0), c);
  return p;
}

Poly Poly::variable(size_t nvars, size_t idx) {
  if (idx >= nvars) throw DomainError("variable index out of range");
  Poly p(nvars);
  Monomial m(nvars, 0);
  m[idx] = 1;
  p.terms_.emplace(std::move(m), mpq_class(1));
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && monomial_degree(terms_.begin()->first) == 0;
}

mpq_class Poly::constant_value() const {
  if (terms_.empty()) return mpq_class(0);
  if (!is_constant()) throw DomainError("polynomial is not constant");
  return terms_.begin()->second;
}

void Poly::set_term(const Monomial& m, const mpq_class& c) {
  if (m.size() != nvars_) throw DomainError("monomial arity mismatch");
  if (c == 0)
    terms_.erase(m);
  else
    terms_[m] = c;
}

Poly Poly::operator+(const Poly& o) const {
  if (nvars_ != o.nvars_) throw DomainError("polynomial arity mismatch");
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) {
    auto it = r.terms_.find(m);
    if (it == r.terms_.end()) {
      r.terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) r.terms_.erase(it);
    }
  }
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (nvars_ != o.nvars_) throw DomainError("polynomial arity mismatch");
  Poly r(nvars_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m(nvars_);
      for (size_t i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
      auto it = r.terms_.find(m);
      if (it == r.terms_.end()) {
        r.terms_.emplace(std::move(m), ca * cb);
      } else {
        it->second += ca * cb;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  }
  return r;
}

Poly Poly::scaled(const mpq_class& c) const {
  Poly r(nvars_);
  if (c == 0) return r;
  for (const auto& [m, coeff] : terms_) r.terms_.emplace(m, coeff * c);
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly r = Poly::constant(nvars_, 1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) r = r * base;
    base = base * base;
    e >>= 1u;
  }
  return r;
}

unsigned Poly::degree_in(size_t var) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
  return d;
}

Poly Poly::coeff_of(size_t var, unsigned k) const {
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == k) {
      Monomial rest = m;
      rest[var] = 0;
      r.terms_.emplace(std::move(rest), c);
    }
  }
  return r;
}

Poly Poly::divide_by_var(size_t var) const {
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) throw DomainError("division by variable is not exact");
    Monomial q = m;
    q[var] -= 1;
    r.terms_.emplace(std::move(q), c);
  }
  return r;
}

Poly Poly::substitute(const std::vector<Poly>& images, size_t out_nvars) const {
  if (images.size() != nvars_) throw DomainError("substitution image count mismatch");
  for (const Poly& im : images)
    if (im.nvars() != out_nvars) throw DomainError("substitution image arity mismatch");
  Poly r(out_nvars);
  for (const auto& [m, c] : terms_) {
    Poly term = Poly::constant(out_nvars, c);
    for (size_t i = 0; i < nvars_; ++i)
      if (m[i] > 0) term = term * images[i].pow(m[i]);
    r = r + term;
  }
  return r;
}

Poly Poly::derivative(size_t var) const {
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial q = m;
    q[var] -= 1;
    mpq_class coeff = c * mpq_class(m[var]);
    auto it = r.terms_.find(q);
    if (it == r.terms_.end())
      r.terms_.emplace(std::move(q), coeff);
    else
      it->second += coeff;
  }
  return r;
}

mpq_class Poly::eval_q(const std::vector<mpq_class>& point) const {
  if (point.size() != nvars_) throw DomainError("evaluation point arity mismatch");
  mpq_class acc(0);
  for (const auto& [m, c] : terms_) {
    mpq_class term = c;
    for (size_t i = 0; i < nvars_; ++i) {
      for (unsigned e = 0; e < m[i]; ++e) term *= point[i];
    }
    acc += term;
  }
  return acc;
}

RingElem Poly::eval_ring(const Ring& r, const Vec& point) const {
  if (point.size() != nvars_) throw DomainError("evaluation point arity mismatch");
  RingElem acc = r.zero();
  for (const auto& [m, c] : terms_) {
    RingElem term = r.from_rational(c);
    for (size_t i = 0; i < nvars_; ++i) {
      for (unsigned e = 0; e < m[i]; ++e) term = r.mul(term, point[i]);
    }
    acc = r.add(acc, term);
  }
  return acc;
}

std::string Poly::to_string(const std::vector<std::string>& var_names) const {
  if (var_names.size() != nvars_) throw DomainError("variable name count mismatch");
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    mpq_class coeff = c;
    if (first) {
      if (coeff < 0) {
        out << "-";
        coeff = -coeff;
      }
      first = false;
    } else {
      if (coeff < 0) {
        out << " - ";
        coeff = -coeff;
      } else {
        out << " + ";
      }
    }
    bool has_vars = monomial_degree(m) > 0;
    bool printed = false;
    if (!has_vars || coeff != 1) {
      out << coeff.get_str();
      printed = true;
    }
    for (size_t i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      if (printed) out << "*";
      out << var_names[i];
      if (m[i] > 1) out << "^" << m[i];
      printed = true;
    }
  }
  return out.str();
}

// ---- gcd machinery ------------------------------------------------------------

namespace {

// Rational content: the positive rational c such that p/c has coprime integer
// coefficients. Zero polynomial has content 0.
mpq_class rational_content(const Poly& p) {
  if (p.is_zero()) return mpq_class(0);
  mpz_class num_gcd(0), den_lcm(1);
  for (const auto& [m, c] : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  mpq_class content(num_gcd, den_lcm);
  content.canonicalize();
  return content;
}

// Sign of the leading (first in canonical order) coefficient.
int leading_sign(const Poly& p) {
  if (p.is_zero()) return 0;
  return sgn(p.terms().begin()->second);
}

// Divide by the signed rational content: coprime integer coefficients,
// positive leading coefficient.
Poly make_primitive(const Poly& p) {
  if (p.is_zero()) return p;
  mpq_class c = rational_content(p);
  if (leading_sign(p) < 0) c = -c;
  return p.scaled(1 / c);
}

// First variable with positive degree in either polynomial, if any.
std::optional<size_t> pick_main_var(const Poly& a, const Poly& b) {
  for (size_t i = 0; i < a.nvars(); ++i)
    if (a.degree_in(i) > 0 || b.degree_in(i) > 0) return i;
  return std::nullopt;
}

Poly exact_divide(const Poly& a, const Poly& d);

// GCD of the coefficients of p viewed as univariate in `var`.
Poly content_in_var(const Poly& p, size_t var) {
  Poly g(p.nvars());
  unsigned deg = p.degree_in(var);
  for (unsigned k = 0; k <= deg; ++k) {
    Poly c = p.coeff_of(var, k);
    if (!c.is_zero()) g = poly_gcd(g, c);
  }
  return g;
}

// Pseudo-remainder of a by b in `var` (degrees in var: deg a >= deg b >= 1).
Poly pseudo_remainder(const Poly& a, const Poly& b, size_t var) {
  unsigned db = b.degree_in(var);
  Poly lcb = b.coeff_of(var, db);
  Poly r = a;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    unsigned dr = r.degree_in(var);
    Poly lcr = r.coeff_of(var, dr);
    Poly shift(r.nvars());
    Monomial m(r.nvars(), 0);
    m[var] = dr - db;
    shift.set_term(m, 1);
    r = r * lcb - b * lcr * shift;
    if (!r.is_zero() && r.degree_in(var) >= dr)
      throw DomainError("pseudo-division failed to reduce degree");
  }
  return r;
}

// Exact multivariate division (quotient known to exist).
Poly exact_divide(const Poly& a, const Poly& d) {
  if (d.is_zero()) throw DomainError("division by zero polynomial");
  if (a.is_zero()) return a;
  if (d.is_constant()) return a.scaled(1 / d.constant_value());
  auto mv = pick_main_var(d, d);
  size_t var = *mv;
  unsigned dd = d.degree_in(var);
  Poly lcd = d.coeff_of(var, dd);
  Poly q(a.nvars());
  Poly r = a;
  while (!r.is_zero() && r.degree_in(var) >= dd) {
    unsigned dr = r.degree_in(var);
    Poly lcr = r.coeff_of(var, dr);
    Poly qc = exact_divide(lcr, lcd);
    Poly shift(a.nvars());
    Monomial m(a.nvars(), 0);
    m[var] = dr - dd;
    shift.set_term(m, 1);
    Poly qterm = qc * shift;
    q = q + qterm;
    r = r - qterm * d;
    if (!r.is_zero() && r.degree_in(var) >= dr)
      throw DomainError("exact division failed to reduce degree");
  }
  if (!r.is_zero()) throw DomainError("division is not exact");
  return q;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) throw DomainError("polynomial arity mismatch");
  if (a.is_zero()) return make_primitive(b);
  if (b.is_zero()) return make_primitive(a);
  if (a.is_constant() || b.is_constant()) return Poly::constant(a.nvars(), 1);
  auto mv = pick_main_var(a, b);
  if (!mv) return Poly::constant(a.nvars(), 1);
  size_t var = *mv;
  if (a.degree_in(var) == 0) return poly_gcd(a, content_in_var(b, var));
  if (b.degree_in(var) == 0) return poly_gcd(content_in_var(a, var), b);

  Poly ca = content_in_var(a, var);
  Poly cb = content_in_var(b, var);
  Poly shared_content = poly_gcd(ca, cb);
  Poly pa = exact_divide(a, ca);
  Poly pb = exact_divide(b, cb);
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);

  // Primitive PRS: pseudo-remainders reduced to their primitive parts.
  while (true) {
    if (pb.is_zero()) break;
    if (pb.degree_in(var) == 0) {
      pa = Poly::constant(a.nvars(), 1);
      break;
    }
    Poly r = pseudo_remainder(pa, pb, var);
    pa = pb;
    if (r.is_zero()) {
      pb = r;
    } else {
      pb = exact_divide(r, content_in_var(r, var));
    }
  }
  return make_primitive(shared_content * make_primitive(pa));
}

// ---- fractions ----------------------------------------------------------------

Fraction::Fraction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.nvars() != den_.nvars()) throw DomainError("fraction arity mismatch");
  if (den_.is_zero()) throw DomainError("zero denominator");
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.nvars(), 1);
    return;
  }
  Poly g = poly_gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = exact_divide(num_, g);
    den_ = exact_divide(den_, g);
  }
  // Scale so the denominator has coprime integer coefficients and positive
  // leading coefficient; the fraction's value is unchanged.
  mpq_class c = rational_content(den_);
  if (leading_sign(den_) < 0) c = -c;
  num_ = num_.scaled(1 / c);
  den_ = den_.scaled(1 / c);
}

Fraction Fraction::operator+(const Fraction& o) const {
  return Fraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Fraction Fraction::operator-(const Fraction& o) const {
  return Fraction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Fraction Fraction::operator-() const {
  Fraction r = *this;
  r.num_ = -r.num_;
  return r;
}

Fraction Fraction::operator*(const Fraction& o) const {
  return Fraction(num_ * o.num_, den_ * o.den_);
}

Fraction Fraction::operator/(const Fraction& o) const {
  if (o.is_zero()) throw DomainError("division by zero fraction");
  return Fraction(num_ * o.den_, den_ * o.num_);
}

Fraction Fraction::pow(unsigned e) const {
  return Fraction(num_.pow(e), den_.pow(e));
}

Fraction Fraction::substitute(const std::vector<Fraction>& images, size_t out_nvars) const {
  if (images.size() != nvars()) throw DomainError("substitution image count mismatch");
  // Substitute into numerator and denominator term by term, clearing inner
  // denominators as we go.
  auto subst_poly = [&](const Poly& p) -> Fraction {
    Fraction acc = Fraction(Poly(out_nvars));
    for (const auto& [m, c] : p.terms()) {
      Fraction term = Fraction::constant(out_nvars, c);
      for (size_t i = 0; i < p.nvars(); ++i)
        if (m[i] > 0) term = term * images[i].pow(m[i]);
      acc = acc + term;
    }
    return acc;
  };
  Fraction n = subst_poly(num_);
  Fraction d = subst_poly(den_);
  return n / d;
}

Fraction Fraction::derivative(size_t var) const {
  // (n/d)' = (n' d - n d') / d^2
  return Fraction(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

std::string Fraction::to_string(const std::vector<std::string>& var_names) const {
  if (is_polynomial()) {
    Poly p = den_.constant_value() == 1 ? num_ : num_.scaled(1 / den_.constant_value());
    return p.to_string(var_names);
  }
  std::string n = num_.to_string(var_names);
  std::string d = den_.to_string(var_names);
  if (num_.terms().size() > 1) n = "(" + n + ")";
  if (den_.terms().size() > 1 || den_.terms().begin()->second != 1 ||
      d.find('*') != std::string::npos || d.find('^') != std::string::npos)
    d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace dg
