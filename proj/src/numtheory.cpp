#include "numtheory.hpp"

#include <numeric>
#include <stdexcept>

namespace holant::nt {

std::vector<unsigned> prime_factors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<unsigned> divisors(unsigned long n) {
  std::vector<unsigned> lo, hi;
  for (unsigned long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    lo.push_back(static_cast<unsigned>(d));
    if (d * d != n) hi.push_back(static_cast<unsigned>(n / d));
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

unsigned phi(unsigned n) {
  unsigned r = n;
  for (unsigned p : prime_factors(n)) r = r / p * (p - 1);
  return r;
}

static unsigned long powmod(unsigned long b, unsigned long e, unsigned long m) {
  unsigned long r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

unsigned primitive_root(unsigned p) {
  if (p == 2) return 1;
  auto fs = prime_factors(p - 1);
  for (unsigned g = 2; g < p; ++g) {
    bool ok = true;
    for (unsigned q : fs)
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root");
}

unsigned crt(unsigned a, unsigned m, unsigned b, unsigned n) {
  for (unsigned long x = a % m; x < static_cast<unsigned long>(m) * n; x += m)
    if (x % n == b % n) return static_cast<unsigned>(x);
  throw std::logic_error("crt: moduli not coprime");
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::optional<std::vector<mpq_class>> solve_columns(const std::vector<std::vector<mpq_class>>& cols,
                                                   const std::vector<mpq_class>& rhs) {
  const std::size_t nvar = cols.size(), neq = rhs.size();
  std::vector<std::vector<mpq_class>> m(neq, std::vector<mpq_class>(nvar + 1));
  for (std::size_t r = 0; r < neq; ++r) {
    for (std::size_t c = 0; c < nvar; ++c) m[r][c] = cols[c][r];
    m[r][nvar] = rhs[r];
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivcol;
  for (std::size_t c = 0; c < nvar && row < neq; ++c) {
    std::size_t piv = row;
    while (piv < neq && m[piv][c] == 0) ++piv;
    if (piv == neq) return std::nullopt;  // free variable
    std::swap(m[piv], m[row]);
    for (std::size_t r = 0; r < neq; ++r) {
      if (r == row || m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[row][c];
      for (std::size_t k = c; k <= nvar; ++k) m[r][k] -= f * m[row][k];
    }
    pivcol.push_back(c);
    ++row;
  }
  if (pivcol.size() < nvar) return std::nullopt;
  for (std::size_t r = row; r < neq; ++r)
    if (m[r][nvar] != 0) return std::nullopt;
  std::vector<mpq_class> x(nvar);
  for (std::size_t r = 0; r < nvar; ++r) x[pivcol[r]] = m[r][nvar] / m[r][pivcol[r]];
  return x;
}

}  // namespace holant::nt
