// Exact ring arithmetic: integers, rationals, residue rings Z/n, and the
// truncated ring K_t = K[X]/(X^2 - tX) whose elements are pairs (x,u).
// All values are immutable and kept in canonical form (reduced fractions with
// positive denominator, residues in [0,n)), so equality is structural.
#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dg {

// Precondition violations and malformed inputs surface as DomainError values
// (caught by the CLI and reported as data), never as assertions.
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class RingElem;

// Payload of a truncated-ring element: x + u*[X].
struct KtPair;

class RingElem {
public:
  using Payload = std::variant<mpz_class,                    // integers
                               mpq_class,                    // rationals
                               std::pair<mpz_class, mpz_class>,  // mod-n: (residue, n)
                               std::shared_ptr<const KtPair>>;   // truncated

  RingElem() : payload_(mpz_class(0)) {}
  explicit RingElem(Payload p) : payload_(std::move(p)) {}

  const Payload& payload() const { return payload_; }

  bool operator==(const RingElem& o) const;
  bool operator!=(const RingElem& o) const { return !(*this == o); }

private:
  Payload payload_;
};

struct KtPair {
  RingElem x;
  RingElem u;
};

enum class RingKind { Integers, Rationals, ModN, Truncated };

class Ring : public std::enable_shared_from_this<Ring> {
public:
  static RingPtr integers();
  static RingPtr rationals();
  static RingPtr modn(const mpz_class& n);  // n >= 2
  static RingPtr truncated(RingPtr base, const RingElem& t);

  RingKind kind() const { return kind_; }
  bool commutative() const { return true; }  // all carriers here are commutative
  const mpz_class& modulus() const { return n_; }
  const RingPtr& base() const { return base_; }
  const RingElem& t_param() const { return t_; }

  // Number of elements when finite and enumerable, nullopt otherwise.
  std::optional<size_t> size() const;
  RingElem element_at(size_t idx) const;
  std::vector<RingElem> all_elements() const;

  RingElem zero() const;
  RingElem one() const;
  RingElem from_int(long v) const;
  // Injects an exact rational; throws DomainError when the denominator is not
  // a unit in this ring (e.g. 1/2 over Z).
  RingElem from_rational(const mpq_class& q) const;

  RingElem add(const RingElem& a, const RingElem& b) const;
  RingElem sub(const RingElem& a, const RingElem& b) const;
  RingElem neg(const RingElem& a) const;
  RingElem mul(const RingElem& a, const RingElem& b) const;
  bool eq(const RingElem& a, const RingElem& b) const;
  bool is_zero(const RingElem& a) const { return eq(a, zero()); }

  // Unit test with witness: returns the inverse when a is invertible.
  std::optional<RingElem> is_unit(const RingElem& a) const;
  // Division through is_unit; throws DomainError when b is not a unit.
  RingElem div(const RingElem& a, const RingElem& b) const;

  // Truncated ring helpers: pack/unpack pairs over base().
  RingElem make_pair(const RingElem& x, const RingElem& u) const;
  std::pair<RingElem, RingElem> split_pair(const RingElem& a) const;

  std::string to_string(const RingElem& a) const;
  RingElem parse(const std::string& text) const;  // inverse of to_string
  std::string describe() const;  // e.g. "Z/5", "Q", "K_2(Z/5)"

  // Validates that the element's payload belongs to this ring; throws
  // DomainError naming `op` otherwise.
  void check(const RingElem& a, const char* op) const;

private:
  Ring() = default;

  RingKind kind_ = RingKind::Integers;
  mpz_class n_;     // ModN only
  RingPtr base_;    // Truncated only
  RingElem t_;      // Truncated only
};

// The product law of K_t on raw pairs over a base ring:
//   (x,u)*(y,v) = (xy, xv + uy + t*u*v).
// This is the boxed multiplication the truncated Ring::mul delegates to.
std::pair<RingElem, RingElem> kt_mul(const Ring& base,
                                     const std::pair<RingElem, RingElem>& a,
                                     const std::pair<RingElem, RingElem>& b,
                                     const RingElem& t);

// ---- module vectors ---------------------------------------------------------

using Vec = std::vector<RingElem>;

Vec vec_add(const Ring& r, const Vec& a, const Vec& b);
Vec vec_sub(const Ring& r, const Vec& a, const Vec& b);
Vec vec_neg(const Ring& r, const Vec& a);
Vec vec_scale(const Ring& r, const Vec& a, const RingElem& s);  // componentwise a*s
bool vec_eq(const Ring& r, const Vec& a, const Vec& b);
Vec vec_zero(const Ring& r, size_t dim);
std::string vec_to_string(const Ring& r, const Vec& a);

// K_t-module action on pairs of vectors over a commutative base:
//   (r,s)·(x,v) = (r·x, r·v + s·x + t·s·v), componentwise.
std::pair<Vec, Vec> module_action_t(const Ring& base,
                                    const std::pair<RingElem, RingElem>& scalar,
                                    const std::pair<Vec, Vec>& vec,
                                    const RingElem& t);

}  // namespace dg
