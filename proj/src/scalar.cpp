#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>

#include "holant/scalar.hpp"
#include "numtheory.hpp"

namespace holant {

namespace {

unsigned canonical(unsigned n) { return n % 4 == 2 ? n / 2 : n; }

long legendre(unsigned long a, unsigned long p) {
  a %= p;
  if (a == 0) return 0;
  unsigned long r = 1, b = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

// Square root of the rational r inside Q(zeta_m), built from Gauss sums.
std::optional<Cyclo> rational_sqrt(const mpq_class& r, unsigned m) {
  if (r == 0) return Cyclo();
  BigInt n = r.get_num() * r.get_den();
  int sign = sgn(n);
  n = abs(n);
  BigInt s = 1, q = 1;
  for (unsigned p = 2; p <= std::max(m, 2u) && n > 1; ++p) {
    bool prime = true;
    for (unsigned d = 2; d * d <= p; ++d)
      if (p % d == 0) {
        prime = false;
        break;
      }
    if (!prime) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      ++e;
    }
    for (unsigned k = 0; k < e / 2; ++k) s *= p;
    if (e % 2) q *= p;
  }
  if (n > 1) {
    if (!mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
    BigInt t;
    mpz_sqrt(t.get_mpz_t(), n.get_mpz_t());
    s *= t;
  }
  q *= sign;
  // conductor of Q(sqrt q)
  long qq = q.get_si();
  long qm4 = ((qq % 4) + 4) % 4;
  unsigned long cond = qm4 == 1 ? std::labs(qq) : 4 * std::labs(qq);
  if (m % cond != 0) return std::nullopt;
  Cyclo g(1);
  long star = 1;
  for (unsigned p : nt::prime_factors(static_cast<unsigned>(std::labs(qq)))) {
    if (p == 2) continue;
    std::vector<BigInt> v(p, 0);
    for (unsigned a = 1; a < p; ++a) v[a] = legendre(a, p);
    g *= Cyclo::from_coefficients(p, std::move(v));
    star *= (p % 4 == 1) ? static_cast<long>(p) : -static_cast<long>(p);
  }
  long rest = qq / star;
  if (rest == -1)
    g *= Cyclo::zeta(4);
  else if (rest == 2)
    g *= Cyclo::zeta(8) + Cyclo::zeta(8, 7);
  else if (rest == -2)
    g *= Cyclo::zeta(8) + Cyclo::zeta(8, 3);
  g *= Cyclo::rational(s, r.get_den());
  return g;
}

// Complex Gaussian elimination; returns the inverse of a small square matrix.
using CLD = std::complex<long double>;
std::vector<std::vector<CLD>> invert(std::vector<std::vector<CLD>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<CLD>> inv(n, std::vector<CLD>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    CLD d = a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] /= d;
      inv[c][k] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      CLD f = a[r][c];
      if (f == CLD(0)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

// Searches for y in Z[zeta_m] with y^2 = w by choosing a sign per conjugate
// pair of embeddings and rounding the resulting coefficients.
std::optional<Cyclo> integral_sqrt_numeric(const Cyclo& w, unsigned m) {
  std::vector<long> units;
  for (unsigned k = 1; k < m; ++k)
    if (std::gcd(k, m) == 1) units.push_back(k);
  const std::size_t f = units.size();
  if (f == 0 || f > 16) return std::nullopt;
  const long double two_pi = 6.283185307179586476925286766559L;
  std::vector<std::vector<CLD>> v(f, std::vector<CLD>(f));
  for (std::size_t r = 0; r < f; ++r)
    for (std::size_t j = 0; j < f; ++j) {
      long double ang = two_pi * static_cast<long double>((units[r] * j) % m) / m;
      v[r][j] = CLD(cosl(ang), sinl(ang));
    }
  auto vinv = invert(v);
  std::vector<CLD> roots(f);
  for (std::size_t r = 0; r < f; ++r) roots[r] = std::sqrt(w.embed(units[r]));
  // pair index: units[r] and m - units[r]
  std::vector<std::size_t> partner(f);
  for (std::size_t r = 0; r < f; ++r)
    for (std::size_t s = 0; s < f; ++s)
      if (static_cast<unsigned long>(units[r] + units[s]) == m) partner[r] = s;
  std::vector<std::size_t> heads;
  for (std::size_t r = 0; r < f; ++r)
    if (units[r] * 2 < static_cast<long>(m)) heads.push_back(r);
  const std::size_t combos = heads.empty() ? 1 : std::size_t{1} << (heads.size() - 1);
  for (std::size_t mask = 0; mask < combos; ++mask) {
    std::vector<CLD> vals(f);
    for (std::size_t h = 0; h < heads.size(); ++h) {
      long double sg = (h > 0 && (mask >> (h - 1)) & 1) ? -1.0L : 1.0L;
      vals[heads[h]] = sg * roots[heads[h]];
      vals[partner[heads[h]]] = std::conj(vals[heads[h]]);
    }
    if (heads.empty()) vals[0] = roots[0];
    std::vector<BigInt> coef(f);
    bool ok = true;
    for (std::size_t j = 0; j < f && ok; ++j) {
      CLD c = 0;
      for (std::size_t r = 0; r < f; ++r) c += vinv[j][r] * vals[r];
      long double re = c.real();
      if (std::fabs(re) > 9e17L || std::fabs(c.imag()) > 1e-4L ||
          std::fabs(re - std::roundl(re)) > 1e-4L) {
        ok = false;
        break;
      }
      coef[j] = BigInt(static_cast<long>(std::llroundl(re)));
    }
    if (!ok) continue;
    Cyclo y = Cyclo::from_coefficients(m, coef);
    if (y * y == w) return y;
  }
  return std::nullopt;
}

std::vector<unsigned> sqrt_candidates(unsigned n) {
  std::set<unsigned> s;
  for (unsigned long m : {std::lcm<unsigned long>(n, 1), 2ul * n, std::lcm<unsigned long>(n, 8),
                          std::lcm<unsigned long>(2ul * n, 8)}) {
    unsigned c = canonical(static_cast<unsigned>(m));
    if (c <= max_order()) s.insert(c);
  }
  return {s.begin(), s.end()};
}

std::optional<Cyclo> field_sqrt(const Cyclo& x) {
  for (unsigned m : sqrt_candidates(x.order()))
    if (auto y = sqrt_in_field(x, m)) return y;
  return std::nullopt;
}

std::complex<long double> principal_sqrt(const Cyclo& d) { return std::sqrt(d.embed(1)); }

}  // namespace

std::optional<Cyclo> sqrt_in_field(const Cyclo& x, unsigned m) {
  m = canonical(m);
  if (x.is_zero()) return Cyclo();
  if (m % x.order() != 0) return std::nullopt;
  if (x.is_rational()) {
    mpq_class r(x.numerators()[0], x.denominator());
    return rational_sqrt(r, m);
  }
  Cyclo xl = x.lift(m);
  // rational multiple of a root of unity
  for (unsigned j = 1; j < m; ++j) {
    Cyclo t = xl * Cyclo::zeta(m, -static_cast<long>(j));
    if (!t.is_rational()) continue;
    std::optional<Cyclo> half;
    if (j % 2 == 0)
      half = Cyclo::zeta(m, j / 2);
    else if (m % 2 == 1)
      half = Cyclo::zeta(m, (j + m) / 2);
    if (!half) continue;
    mpq_class r(t.numerators()[0], t.denominator());
    if (auto s = rational_sqrt(r, m)) return *s * *half;
  }
  Cyclo w = Cyclo::from_coefficients(m, xl.numerators()) * Cyclo(xl.denominator());
  if (auto y = integral_sqrt_numeric(w, m)) return *y / Cyclo(xl.denominator());
  return std::nullopt;
}

// ---------------------------------------------------------------- Scalar

Scalar Scalar::with_radical(Cyclo a, Cyclo b, Cyclo radicand) {
  Scalar s;
  s.a_ = std::move(a);
  s.b_ = std::move(b);
  s.d_ = std::move(radicand);
  s.drop_zero_radical();
  return s;
}

unsigned Scalar::order() const {
  unsigned long l = std::lcm<unsigned long>(a_.order(), b_.order());
  return static_cast<unsigned>(std::lcm<unsigned long>(l, d_.order()));
}

void Scalar::drop_zero_radical() {
  if (b_.is_zero()) d_ = Cyclo();
}

void Scalar::align(Scalar& o) {
  if (!o.has_radical() || !has_radical() || d_ == o.d_) return;
  Cyclo r = o.d_ / d_;
  auto s = field_sqrt(r);
  if (!s) throw CapabilityError("two independent square roots in one computation");
  // fix the sign so that sqrt(o.d) = s * sqrt(d) under principal branches
  auto lhs = principal_sqrt(o.d_);
  auto rhs = s->embed(1) * principal_sqrt(d_);
  if (std::abs(lhs - rhs) > std::abs(lhs + rhs)) *s = -*s;
  o.b_ *= *s;
  o.d_ = d_;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (!o.has_radical()) {
    a_ += o.a_;
    return *this;
  }
  if (!has_radical()) {
    a_ += o.a_;
    b_ = o.b_;
    d_ = o.d_;
    return *this;
  }
  Scalar t = o;
  align(t);
  a_ += t.a_;
  b_ += t.b_;
  drop_zero_radical();
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (!o.has_radical()) {
    a_ *= o.a_;
    b_ *= o.a_;
    drop_zero_radical();
    return *this;
  }
  if (!has_radical()) {
    Scalar r = o;
    r.a_ *= a_;
    r.b_ *= a_;
    r.drop_zero_radical();
    return *this = r;
  }
  Scalar t = o;
  align(t);
  Cyclo na = a_ * t.a_ + b_ * t.b_ * d_;
  Cyclo nb = a_ * t.b_ + b_ * t.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  drop_zero_radical();
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw PreconditionError("division by zero");
  if (!has_radical()) return a_.inverse();
  Cyclo n = a_ * a_ - b_ * b_ * d_;
  Cyclo ni = n.inverse();
  return with_radical(a_ * ni, -b_ * ni, d_);
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result(1), base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Scalar Scalar::conj() const {
  if (!has_radical()) return a_.conj();
  // off the negative real axis the principal root commutes with conjugation
  return with_radical(a_.conj(), b_.conj(), d_.conj());
}

FloatScalar Scalar::approx() const {
  std::complex<long double> z = a_.embed(1);
  if (has_radical()) z += b_.embed(1) * principal_sqrt(d_);
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

bool operator==(const Scalar& x, const Scalar& y) {
  if (x.has_radical() != y.has_radical()) return false;
  if (!x.has_radical()) return x.a_ == y.a_;
  Scalar a = x, b = y;
  try {
    a.align(b);
  } catch (const CapabilityError&) {
    return false;
  }
  return a.a_ == b.a_ && a.b_ == b.b_;
}

Scalar adjoin_sqrt(const Scalar& d) {
  if (d.is_zero()) return Scalar();
  if (d.has_radical())
    throw CapabilityError("square root of an element that already carries a radical");
  const Cyclo& x = d.base_part();
  if (auto y = field_sqrt(x)) return *y;
  if (x.is_rational()) {
    // pull out the square part: sqrt(s^2 q) = s sqrt(q), q squarefree integer
    BigInt n = x.numerators()[0] * x.denominator();
    int sign = sgn(n);
    n = abs(n);
    BigInt s = 1, q = 1;
    for (unsigned long p = 2; p * p <= 1000000 && p * p <= n; ++p) {
      while (mpz_divisible_ui_p(n.get_mpz_t(), p * p)) {
        n /= p * p;
        s *= p;
      }
    }
    q = n;
    Cyclo coef = Cyclo::rational(s, x.denominator());
    if (sign < 0) coef *= Cyclo::zeta(4);
    return Scalar::with_radical(Cyclo(), coef, Cyclo(q));
  }
  auto z = x.embed(1);
  if (z.real() < 0 && std::fabs(z.imag()) <= 1e-12L * std::abs(z))
    return Scalar::with_radical(Cyclo(), Cyclo::zeta(4), -x);
  return Scalar::with_radical(Cyclo(), Cyclo(1), x);
}

std::optional<unsigned long> root_of_unity_order(const Scalar& z) {
  if (z.is_zero()) return std::nullopt;
  if (!z.has_radical()) {
    unsigned n = z.base_part().order();
    unsigned long l = std::lcm<unsigned long>(2, n);
    if (!(z.pow(static_cast<long>(l)) == Scalar(1))) return std::nullopt;
    for (unsigned d : nt::divisors(l))
      if (z.pow(d) == Scalar(1)) return d;
    return l;
  }
  FloatScalar v = z.approx();
  if (std::fabs(std::abs(v) - 1.0) > 1e-9) return std::nullopt;
  unsigned bound_phi = 2 * euler_phi(z.order());
  unsigned long limit = 2ul * bound_phi * bound_phi + 2;
  double theta = std::arg(v) / (2 * M_PI);
  for (unsigned long m = 1; m <= limit; ++m) {
    if (euler_phi(static_cast<unsigned>(m)) > bound_phi) continue;
    double t = theta * static_cast<double>(m);
    if (std::fabs(t - std::round(t)) > 1e-9 * static_cast<double>(m)) continue;
    if (z.pow(static_cast<long>(m)) == Scalar(1)) return m;
  }
  return std::nullopt;
}

bool canonical_less(const Scalar& a, const Scalar& b) {
  if (a == b) return false;
  FloatScalar x = a.approx(), y = b.approx();
  double tol = 1e-9 * (1 + std::abs(x) + std::abs(y));
  if (std::fabs(x.real() - y.real()) > tol) return x.real() < y.real();
  if (std::fabs(x.imag() - y.imag()) > tol) return x.imag() < y.imag();
  return render(a) < render(b);
}

}  // namespace holant
