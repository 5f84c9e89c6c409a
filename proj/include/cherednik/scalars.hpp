#pragma once

// Exact scalars: rationals and elements of cyclotomic fields Q(zeta_N).
//
// An element of Q(zeta_N) is stored in the power basis 1, zeta, ..., zeta^{phi(N)-1}
// reduced modulo the N-th cyclotomic polynomial, which makes the representation
// canonical: two values are equal iff their coefficient vectors are equal.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace cherednik {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Rational& q);

// Orders above this limit are rejected; the default keeps deg(Phi_N) small.
int max_cyclotomic_order();
void set_max_cyclotomic_order(int limit);

int euler_phi(int n);
long lcm_order(long a, long b);

// Integer coefficients of Phi_N, lowest degree first. Cached.
const std::vector<Integer>& cyclotomic_polynomial(int n);

class Cyclo {
 public:
  Cyclo();
  Cyclo(long value);  // NOLINT(google-explicit-constructor)
  Cyclo(const Rational& value, int order = 1);

  // Build from power-basis coefficients (any length); reduces modulo Phi_N.
  static Cyclo from_coefficients(int order, std::vector<Rational> coeffs);

  // zeta_N^k for any integer k.
  static Cyclo root(int order, long k);

  int order() const noexcept { return order_; }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  Rational rational_value() const;

  // Same value in Q(zeta_M); M must be a multiple of order().
  Cyclo embed(int target_order) const;

  Cyclo inverse() const;
  Cyclo pow(long exponent) const;

  Cyclo operator-() const;
  Cyclo& operator+=(const Cyclo& rhs);
  Cyclo& operator-=(const Cyclo& rhs);
  Cyclo& operator*=(const Cyclo& rhs);
  Cyclo& operator/=(const Cyclo& rhs);

  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
  friend Cyclo operator/(Cyclo a, const Cyclo& b) { return a /= b; }

  friend bool operator==(const Cyclo& a, const Cyclo& b);
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  // Textual form: `a/b` terms joined with +/-, roots written z{N}^k.
  std::string to_string() const;

 private:
  void reduce();
  // Brings rhs to this order (only order-1 values are promoted).
  static int common_order(const Cyclo& a, const Cyclo& b);

  int order_ = 1;
  std::vector<Rational> coeffs_;
};

// Total order on values of equal cyclotomic order; used only for deterministic sorting.
bool lexicographic_less(const Cyclo& a, const Cyclo& b);

// Helpers for dense polynomials over Q (lowest degree first).
namespace rational_poly {
using Poly = std::vector<Rational>;
void trim(Poly& p);
Poly multiply(const Poly& a, const Poly& b);
// Quotient and remainder of a by b (b nonzero).
void divide(const Poly& a, const Poly& b, Poly& quotient, Poly& remainder);
}  // namespace rational_poly

}  // namespace cherednik
