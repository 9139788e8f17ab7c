#pragma once

/**
 * @file scalar.hpp
 * @brief Exact arithmetic in cyclotomic fields Q(zeta_n), optionally extended
 * by a single square root, plus a complex<double> shadow backend.
 *
 * A Cyclo is stored in the power basis of zeta_n reduced modulo the n-th
 * cyclotomic polynomial, with a common positive denominator. The
 * representation is canonical for a fixed order, so equality is coefficient
 * equality after lifting both operands to the lcm of their orders.
 *
 * Scalar adds at most one quadratic layer a + b*sqrt(D) on top of Cyclo.
 * Mixing two radicals that do not differ by a square in the base field
 * raises CapabilityError.
 */

#include <complex>
#include <cstdint>
#include <gmpxx.h>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holant/errors.hpp"

namespace holant {

using BigInt = mpz_class;
using FloatScalar = std::complex<double>;

/// Largest cyclotomic order any exact computation may reach (default 360).
unsigned max_order() noexcept;
void set_max_order(unsigned n) noexcept;

unsigned euler_phi(unsigned n);
/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
const std::vector<long long>& cyclotomic_polynomial(unsigned n);

class Cyclo {
 public:
  Cyclo() : num_{BigInt(0)} {}
  Cyclo(long v) : num_{BigInt(v)} {}  // NOLINT(google-explicit-constructor)
  explicit Cyclo(const BigInt& v) : num_{v} {}

  static Cyclo rational(const BigInt& num, const BigInt& den);
  /// zeta_n^k = e^{2 pi i k / n}.
  static Cyclo zeta(unsigned n, long k = 1);
  /// Builds sum_j num[j] zeta_n^j / den; num may be longer than phi(n).
  static Cyclo from_coefficients(unsigned n, std::vector<BigInt> num, BigInt den = 1);

  unsigned order() const noexcept { return order_; }
  const std::vector<BigInt>& numerators() const noexcept { return num_; }
  const BigInt& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept;
  bool is_rational() const noexcept { return order_ == 1; }
  bool is_one() const noexcept;

  /// Same value expressed in Q(zeta_m); m must be a multiple of order().
  Cyclo lift(unsigned m) const;
  /// Field automorphism zeta -> zeta^k, gcd(k, order) = 1.
  Cyclo galois(long k) const;
  Cyclo conj() const { return galois(-1); }
  Cyclo inverse() const;
  Cyclo pow(long e) const;

  /// Value under the embedding zeta_n -> e^{2 pi i k / n}.
  std::complex<long double> embed(long k = 1) const;
  FloatScalar approx() const;

  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  Cyclo& operator/=(const Cyclo& o);

  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
  friend Cyclo operator/(Cyclo a, const Cyclo& b) { return a /= b; }
  Cyclo operator-() const;
  friend bool operator==(const Cyclo& a, const Cyclo& b);

  std::string to_string() const;

 private:
  void normalize();

  unsigned order_ = 1;
  std::vector<BigInt> num_;
  BigInt den_ = 1;
};

/// Lcm of two orders, checked against max_order().
unsigned common_order(unsigned a, unsigned b);

/// The same value expressed in the smallest cyclotomic field containing it.
Cyclo minimal_form(const Cyclo& x);

/// Exact square root of x inside Q(zeta_m) for the given m (a multiple of
/// x.order()), if one exists and is found by the embedding search.
std::optional<Cyclo> sqrt_in_field(const Cyclo& x, unsigned m);

class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : a_(v) {}                 // NOLINT(google-explicit-constructor)
  Scalar(const Cyclo& c) : a_(c) {}         // NOLINT(google-explicit-constructor)
  Scalar(const BigInt& v) : a_(Cyclo(v)) {}  // NOLINT(google-explicit-constructor)

  /// a + b*sqrt(radicand). The radicand must not be a square in its field;
  /// adjoin_sqrt() is the checked way to build these.
  static Scalar with_radical(Cyclo a, Cyclo b, Cyclo radicand);
  static Scalar rational(long num, long den) { return Cyclo::rational(num, den); }
  static Scalar zeta(unsigned n, long k = 1) { return Cyclo::zeta(n, k); }
  static Scalar i() { return Cyclo::zeta(4); }

  bool has_radical() const noexcept { return !b_.is_zero(); }
  const Cyclo& base_part() const noexcept { return a_; }
  const Cyclo& radical_coefficient() const noexcept { return b_; }
  const Cyclo& radicand() const noexcept { return d_; }
  /// Lcm of the orders of all components.
  unsigned order() const;

  bool is_zero() const noexcept { return a_.is_zero() && b_.is_zero(); }
  bool is_one() const noexcept { return a_.is_one() && b_.is_zero(); }

  Scalar conj() const;
  Scalar inverse() const;
  Scalar pow(long e) const;
  FloatScalar approx() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  // Rewrites o's radical in terms of this->d_ (or adopts o's radical).
  void align(Scalar& o);
  void drop_zero_radical();

  Cyclo a_;
  Cyclo b_;
  Cyclo d_;
};

/// Parses the expression grammar
///   expr := term (('+'|'-') term)*; term := factor (('*'|'/') factor)*;
///   factor := atom ('^' integer)?;
///   atom := integer | 'i' | 'w(' posint ')' | 'sqrt2' | 'sqrt(' expr ')'
///         | '(' expr ')' | '-' atom
Scalar parse_scalar(std::string_view text);
/// Canonical text form; parse_scalar(render(z)) == z.
std::string render(const Scalar& z);

/// Multiplicative order of z if z is a root of unity.
std::optional<unsigned long> root_of_unity_order(const Scalar& z);

/// Some s with s*s == d. Stays inside a cyclotomic field when d is a square
/// there (searching the current field, its double, and the adjunction of
/// zeta_8); otherwise returns an element with a fresh radical.
/// Throws CapabilityError if d already carries a radical.
Scalar adjoin_sqrt(const Scalar& d);

inline FloatScalar approx(const Scalar& z) { return z.approx(); }

/// Deterministic total order used to pick canonical witnesses: compares the
/// floating values by real part, then imaginary part, then falls back to the
/// rendered text.
bool canonical_less(const Scalar& a, const Scalar& b);

}  // namespace holant
