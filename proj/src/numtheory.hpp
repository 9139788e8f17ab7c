#pragma once

// Small integer helpers shared by the scalar backend.

#include <gmpxx.h>
#include <optional>
#include <vector>

namespace holant::nt {

std::vector<unsigned> prime_factors(unsigned n);  // distinct, ascending
std::vector<unsigned> divisors(unsigned long n);  // ascending
unsigned phi(unsigned n);
unsigned primitive_root(unsigned p);
/// x with x = a mod m, x = b mod n, 0 <= x < m*n (m, n coprime).
unsigned crt(unsigned a, unsigned m, unsigned b, unsigned n);
mpz_class lcm(const mpz_class& a, const mpz_class& b);

/// Exact solution c of sum_j c_j * cols[j] = rhs, or nullopt when the
/// (possibly overdetermined) system is inconsistent or underdetermined.
std::optional<std::vector<mpq_class>> solve_columns(const std::vector<std::vector<mpq_class>>& cols,
                                                   const std::vector<mpq_class>& rhs);

}  // namespace holant::nt
