#pragma once

// Exact integer number theory on GMP integers: factorization, the classic
// multiplicative functions, primes and primorials.

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

namespace ffprog {

// Ordering for mpz_class keys.
struct MpzLess {
  bool operator()(const mpz_class& a, const mpz_class& b) const { return cmp(a, b) < 0; }
};

/// A positive integer together with its complete prime factorization.
struct FactoredInt {
  mpz_class value = 1;
  std::map<mpz_class, unsigned, MpzLess> factors;

  /// Primes in increasing order.
  std::vector<mpz_class> primes() const;
  std::size_t num_primes() const { return factors.size(); }
  /// Factorization of value / d for a divisor d of value (no refactoring needed).
  FactoredInt quotient(const mpz_class& d) const;
  /// Recompute the product of prime powers; used to check the invariant.
  mpz_class recompose() const;
};

bool is_prime(const mpz_class& n);
bool is_prime(std::uint64_t n);

/// Complete factorization: trial division up to 10^6, then Pollard-rho (Brent).
FactoredInt factorize(const mpz_class& n);
inline FactoredInt factorize(std::uint64_t n) { return factorize(mpz_class(static_cast<unsigned long>(n))); }

mpz_class euler_phi(const FactoredInt& n);
int mobius(const FactoredInt& n);
/// W(n) = 2^{number of distinct primes of n}.
mpz_class count_squarefree_divisors(const FactoredInt& n);

/// All positive divisors, increasing.
std::vector<mpz_class> divisors(const FactoredInt& n);

/// Product of the first e primes.
mpz_class primorial(unsigned e);
/// The e-th prime (1-based).
std::uint64_t nth_prime(unsigned e);
/// Smallest prime strictly greater than p.
std::uint64_t next_prime(std::uint64_t p);
/// All primes < limit, increasing.
std::vector<std::uint64_t> primes_below(std::uint64_t limit);

/// a / gcd(a, b).
mpz_class reduce_by_gcd(const mpz_class& a, const mpz_class& b);

/// Sum over d | R of |mu(d_(r))| / phi(d_(r)) * phi(d), exactly.
mpq_class lemma_sum(const mpz_class& R, const mpz_class& r);

/// If n = p^s for a prime p and s >= 1, returns true and sets p and s.
bool prime_power_decompose(std::uint64_t n, std::uint64_t& p, unsigned& s);

mpz_class ipow(const mpz_class& base, unsigned long exp);

}  // namespace ffprog
