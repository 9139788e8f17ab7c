#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "holant/scalar.hpp"
#include "numtheory.hpp"

namespace holant {

namespace {

std::atomic<unsigned> g_max_order{360};

// Reduces r (coefficients of a polynomial in zeta_n) modulo Phi_n in place.
void reduce_mod_phi(std::vector<BigInt>& r, unsigned n) {
  const auto& phi = cyclotomic_polynomial(n);
  const std::size_t d = phi.size() - 1;
  for (std::size_t i = r.size(); i-- > d;) {
    if (sgn(r[i]) == 0) continue;
    mpz_srcptr c = r[i].get_mpz_t();
    for (std::size_t j = 0; j < d; ++j) {
      long long p = phi[j];
      if (p == 0) continue;
      mpz_ptr t = r[i - d + j].get_mpz_t();
      if (p > 0)
        mpz_submul_ui(t, c, static_cast<unsigned long>(p));
      else
        mpz_addmul_ui(t, c, static_cast<unsigned long>(-p));
    }
    r[i] = 0;
  }
  r.resize(std::max<std::size_t>(d, 1));
}

unsigned canonical(unsigned n) { return n % 4 == 2 ? n / 2 : n; }

}  // namespace

unsigned max_order() noexcept { return g_max_order.load(); }
void set_max_order(unsigned n) noexcept { g_max_order.store(n ? n : 1); }

unsigned euler_phi(unsigned n) { return nt::phi(n); }

const std::vector<long long>& cyclotomic_polynomial(unsigned n) {
  static std::recursive_mutex mu;
  static std::map<unsigned, std::vector<long long>> cache;
  std::lock_guard<std::recursive_mutex> lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  // x^n - 1 divided by Phi_d for every proper divisor d
  std::vector<long long> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d) continue;
    const std::vector<long long>& q = cyclotomic_polynomial(d);
    // exact division by a monic divisor
    const std::size_t dq = q.size() - 1;
    std::vector<long long> quot(p.size() - dq, 0);
    for (std::size_t i = p.size(); i-- > dq;) {
      long long c = p[i];
      quot[i - dq] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j <= dq; ++j) p[i - dq + j] -= c * q[j];
    }
    p = std::move(quot);
  }
  return cache.emplace(n, std::move(p)).first->second;
}

unsigned common_order(unsigned a, unsigned b) {
  unsigned long l = std::lcm<unsigned long>(a, b);
  if (l > max_order())
    throw CapabilityError("cyclotomic order " + std::to_string(l) + " exceeds the cap " +
                          std::to_string(max_order()));
  return static_cast<unsigned>(l);
}

Cyclo Cyclo::rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw PreconditionError("division by zero");
  Cyclo r(num);
  r.den_ = den;
  r.normalize();
  return r;
}

Cyclo Cyclo::from_coefficients(unsigned n, std::vector<BigInt> num, BigInt den) {
  if (n == 0) throw PreconditionError("cyclotomic order must be positive");
  if (den == 0) throw PreconditionError("division by zero");
  if (num.empty()) num.push_back(0);
  if (n % 4 == 2) {
    // zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
    unsigned m = n / 2;
    std::vector<BigInt> v(m, 0);
    for (std::size_t j = 0; j < num.size(); ++j) {
      unsigned long e = (j % n) * ((m + 1) / 2) % m;
      bool neg = (j % n) & 1;
      if (neg)
        v[e] -= num[j];
      else
        v[e] += num[j];
    }
    return from_coefficients(m, std::move(v), std::move(den));
  }
  if (n > max_order())
    throw CapabilityError("cyclotomic order " + std::to_string(n) + " exceeds the cap " +
                          std::to_string(max_order()));
  std::vector<BigInt> v(std::max<std::size_t>(n, 1), 0);
  for (std::size_t j = 0; j < num.size(); ++j) v[j % n] += num[j];
  reduce_mod_phi(v, n);
  Cyclo r;
  r.order_ = n;
  r.num_ = std::move(v);
  r.den_ = std::move(den);
  r.normalize();
  return r;
}

Cyclo Cyclo::zeta(unsigned n, long k) {
  if (n == 0) throw PreconditionError("w(0) is not a root of unity");
  long kk = ((k % static_cast<long>(n)) + n) % n;
  std::vector<BigInt> v(kk + 1, 0);
  v[kk] = 1;
  return from_coefficients(n, std::move(v));
}

void Cyclo::normalize() {
  if (sgn(den_) < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  BigInt g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    if (sgn(c)) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (g != 1) {
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
  bool rational = true;
  for (std::size_t j = 1; j < num_.size(); ++j)
    if (sgn(num_[j])) {
      rational = false;
      break;
    }
  if (rational) {
    order_ = 1;
    num_.resize(1);
  }
  if (sgn(num_[0]) == 0 && order_ == 1) den_ = 1;
}

bool Cyclo::is_zero() const noexcept {
  return order_ == 1 && sgn(num_[0]) == 0;
}

bool Cyclo::is_one() const noexcept {
  return order_ == 1 && num_[0] == 1 && den_ == 1;
}

Cyclo Cyclo::lift(unsigned m) const {
  m = canonical(m);
  if (m == order_) return *this;
  if (m % order_ != 0) throw PreconditionError("lift target is not a multiple of the order");
  unsigned step = m / order_;
  std::vector<BigInt> v(m, 0);
  for (std::size_t j = 0; j < num_.size(); ++j) v[j * step] = num_[j];
  reduce_mod_phi(v, m);
  Cyclo r;
  r.order_ = m;
  r.num_ = std::move(v);
  r.den_ = den_;
  return r;  // already reduced; a lifted non-rational stays non-rational
}

Cyclo Cyclo::galois(long k) const {
  if (order_ == 1) return *this;
  long n = order_;
  long kk = ((k % n) + n) % n;
  if (std::gcd(kk, n) != 1) throw PreconditionError("galois exponent not coprime to the order");
  std::vector<BigInt> v(n, 0);
  for (std::size_t j = 0; j < num_.size(); ++j) v[(j * kk) % n] = num_[j];
  return from_coefficients(order_, std::move(v), den_);
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw PreconditionError("division by zero");
  if (order_ == 1) return rational(den_, num_[0]);
  // x * prod_{k != 1} sigma_k(x) is the (rational) field norm
  Cyclo others(1);
  for (unsigned k = 2; k < order_; ++k)
    if (std::gcd(k, order_) == 1) others *= galois(k);
  Cyclo norm = *this * others;
  if (!norm.is_rational()) throw std::logic_error("field norm is not rational");
  return others / norm;
}

Cyclo Cyclo::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclo result(1), base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::complex<long double> Cyclo::embed(long k) const {
  // scale big numbers down so they fit in a long double
  std::size_t bits = mpz_sizeinbase(den_.get_mpz_t(), 2);
  for (const auto& c : num_) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  long shift = bits > 900 ? static_cast<long>(bits - 900) : 0;
  auto to_ld = [shift](const BigInt& z) {
    if (shift == 0) return static_cast<long double>(z.get_d());
    BigInt t;
    mpz_tdiv_q_2exp(t.get_mpz_t(), z.get_mpz_t(), shift);
    return static_cast<long double>(t.get_d());
  };
  const long double two_pi = 6.283185307179586476925286766559L;
  std::complex<long double> s = 0;
  for (std::size_t j = 0; j < num_.size(); ++j) {
    if (sgn(num_[j]) == 0) continue;
    long e = static_cast<long>((j * ((k % order_ + order_) % order_)) % order_);
    long double ang = two_pi * e / order_;
    s += to_ld(num_[j]) * std::complex<long double>(cosl(ang), sinl(ang));
  }
  return s / to_ld(den_);
}

FloatScalar Cyclo::approx() const {
  auto z = embed(1);
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  if (o.is_zero()) return *this;
  if (order_ != o.order_) {
    unsigned m = common_order(order_, o.order_);
    Cyclo b = o.lift(m);
    *this = lift(m);
    return *this += b;
  }
  if (den_ == o.den_) {
    for (std::size_t j = 0; j < num_.size(); ++j) num_[j] += o.num_[j];
  } else {
    for (std::size_t j = 0; j < num_.size(); ++j) {
      num_[j] *= o.den_;
      mpz_addmul(num_[j].get_mpz_t(), o.num_[j].get_mpz_t(), den_.get_mpz_t());
    }
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) { return *this += -o; }

Cyclo& Cyclo::operator*=(const Cyclo& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = Cyclo();
  if (o.order_ == 1) {
    for (auto& c : num_) c *= o.num_[0];
    den_ *= o.den_;
    normalize();
    return *this;
  }
  if (order_ == 1) {
    Cyclo r = o;
    return *this = r *= *this;
  }
  if (order_ != o.order_) {
    unsigned m = common_order(order_, o.order_);
    Cyclo b = o.lift(m);
    *this = lift(m);
    return *this *= b;
  }
  std::vector<BigInt> prod(num_.size() + o.num_.size() - 1, 0);
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (sgn(num_[i]) == 0) continue;
    for (std::size_t j = 0; j < o.num_.size(); ++j)
      mpz_addmul(prod[i + j].get_mpz_t(), num_[i].get_mpz_t(), o.num_[j].get_mpz_t());
  }
  reduce_mod_phi(prod, order_);
  num_ = std::move(prod);
  den_ *= o.den_;
  normalize();
  return *this;
}

Cyclo& Cyclo::operator/=(const Cyclo& o) { return *this *= o.inverse(); }

namespace {

// Smallest field containing x, found by descending one prime at a time.
Cyclo minimize(const Cyclo& x) {
  Cyclo cur = x;
  bool progress = true;
  while (progress && cur.order() > 1) {
    progress = false;
    unsigned n = cur.order();
    for (unsigned p : nt::prime_factors(n)) {
      unsigned d = n / p;
      if (d % p == 0) {
        // Phi_n(x) = Phi_d(x^p): the subfield is spanned by every p-th basis vector
        const auto& c = cur.numerators();
        bool ok = true;
        for (std::size_t j = 0; j < c.size() && ok; ++j)
          if (j % p && sgn(c[j])) ok = false;
        if (!ok) continue;
        std::vector<BigInt> v;
        for (std::size_t j = 0; j < c.size(); j += p) v.push_back(c[j]);
        cur = Cyclo::from_coefficients(d, std::move(v), cur.denominator());
        progress = true;
        break;
      }
      // p exactly divides n: x lies in Q(zeta_d) iff it is fixed by
      // zeta -> zeta^k with k = 1 mod d and k a generator mod p
      unsigned dc = d % 4 == 2 ? d / 2 : d;
      if (p == 2) continue;  // n = 2 * odd never occurs for canonical orders
      unsigned g = nt::primitive_root(p);
      unsigned k = nt::crt(1, d, g, p);
      if (!(cur.galois(k) == cur)) continue;
      // solve x = sum_j c_j zeta_dc^j over Q
      unsigned fd = euler_phi(dc);
      std::vector<std::vector<mpq_class>> cols;
      for (unsigned j = 0; j < fd; ++j) {
        Cyclo b = Cyclo::zeta(dc, j).lift(n);
        std::vector<mpq_class> col(euler_phi(n));
        for (std::size_t r = 0; r < col.size(); ++r) col[r] = b.numerators()[r];
        cols.push_back(std::move(col));
      }
      std::vector<mpq_class> rhs(euler_phi(n));
      for (std::size_t r = 0; r < rhs.size(); ++r)
        rhs[r] = mpq_class(cur.numerators()[r], cur.denominator());
      auto sol = nt::solve_columns(cols, rhs);
      if (!sol) continue;
      BigInt den = 1;
      for (auto& q : *sol) den = nt::lcm(den, q.get_den());
      std::vector<BigInt> v;
      for (auto& q : *sol) v.push_back(BigInt(q * den));
      cur = Cyclo::from_coefficients(dc, std::move(v), den);
      progress = true;
      break;
    }
  }
  return cur;
}

}  // namespace

Cyclo minimal_form(const Cyclo& x) { return minimize(x); }

bool operator==(const Cyclo& a, const Cyclo& b) {
  if (a.order_ == b.order_) return a.den_ == b.den_ && a.num_ == b.num_;
  unsigned long l = std::lcm<unsigned long>(a.order_, b.order_);
  if (l <= max_order()) return a.lift(l) == b.lift(l);
  Cyclo ma = minimize(a), mb = minimize(b);
  return ma.order_ == mb.order_ && ma.den_ == mb.den_ && ma.num_ == mb.num_;
}

std::string Cyclo::to_string() const {
  Cyclo m = minimize(*this);
  std::ostringstream out;
  bool first = true;
  for (std::size_t j = 0; j < m.num_.size(); ++j) {
    if (sgn(m.num_[j]) == 0) continue;
    mpq_class q(m.num_[j], m.den_);
    q.canonicalize();
    bool neg = sgn(q) < 0;
    if (neg) q = -q;
    bool leading_neg = neg && first;
    if (neg)
      out << '-';
    else if (!first)
      out << '+';
    first = false;
    std::string unit;
    if (j > 0) {
      if (m.order_ == 4)
        unit = "i";
      else
        unit = "w(" + std::to_string(m.order_) + ")" + (j > 1 ? "^" + std::to_string(j) : "");
    }
    if (unit.empty()) {
      out << q.get_str();
    } else if (q == 1) {
      // a leading "-w(n)^k" would re-parse as (-w(n))^k
      if (leading_neg && j > 1) out << "1*";
      out << unit;
    } else {
      out << q.get_str() << '*' << unit;
    }
  }
  if (first) out << '0';
  return out.str();
}

}  // namespace holant
