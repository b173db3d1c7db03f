#pragma once

// Exact certification of the existence criteria and ports of the
// procedures NumberPolFactors, SumFactors and SpecialSieve.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "ffprog/ffcore.hpp"
#include "ffprog/intnt.hpp"

namespace ffprog {

struct BoundValue {
  std::string kind;  // "integer", "rational" or "log"
  std::string text;
};

struct BoundReport {
  std::string criterion;
  std::string comparison;
  BoundValue lhs;
  BoundValue rhs;
  bool verdict = false;
  std::string precision = "exact";
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, std::string>> details;
};

/// Terms of q^{n/2-k} >= m W(g~) Π r_i W(R_i), with W(g~) = 2^{w_gtilde} and W(R_i) = 2^{omega_i}.
struct CriterionTerms {
  std::uint64_t q = 0;
  unsigned n = 0, m = 0, k = 0;
  std::vector<mpz_class> r;
  std::vector<unsigned> omega;
  unsigned w_gtilde = 0;
};

/// Compared as q^{n-2k} >= rhs^2 in integers.
BoundReport theorem_criterion(const CriterionTerms& t);

/// The theorem with R_i = (q^n - 1)/r_i and g = x^n - 1; quotient_factors is the number of
/// distinct irreducible factors of (x^n - 1)/f. Factorizes (q^n - 1)/r_i. Throws NotADivisor.
BoundReport main_criterion(std::uint64_t q, unsigned n, unsigned m, unsigned k, const std::vector<mpz_class>& r,
                           unsigned quotient_factors);
/// Same, with the factor data of a field context and a monic f | x^n - 1, k = deg f.
BoundReport main_criterion(const FieldCtx& ctx, unsigned m, const std::vector<mpz_class>& r, const PolyFq& f);

struct SievePlan {
  std::vector<mpz_class> ell;                         // ℓ_i
  std::vector<std::vector<mpz_class>> excluded_primes;  // p_{i,j}
  std::vector<unsigned> excluded_poly_degrees;        // deg h_j
  mpq_class delta;
  mpq_class Delta;

  std::size_t u_total() const;
};

/// Computes δ and Δ; throws NonPositiveDelta when δ <= 0.
SievePlan make_sieve_plan(std::uint64_t q, std::vector<mpz_class> ell, std::vector<std::vector<mpz_class>> primes,
                          std::vector<unsigned> h_degrees);
/// Excluded primes = primes of R_i not dividing ℓ_i. Throws NotADivisor if ℓ_i ∤ R_i.
SievePlan sieve_plan_from_R(std::uint64_t q, const std::vector<FactoredInt>& R, const std::vector<mpz_class>& ell,
                            std::vector<unsigned> h_degrees);

/// q^{n/2-k} >= m Δ W(g~) Π r_i W(ℓ_i), squared form. Throws NonPositiveDelta.
BoundReport sieve_criterion(std::uint64_t q, unsigned n, unsigned m, unsigned k, const std::vector<mpz_class>& r,
                            const SievePlan& plan, unsigned w_gtilde);

/// Certifies u >= P_e and P_e >= 2^{eN} (i.e. 1/N >= e log 2 / log P_e); with a factored u also
/// checks W(u)^N <= u. Throws HypothesisFailed.
BoundReport w_upper_bound(const mpz_class& u, unsigned N, unsigned e, const std::optional<FactoredInt>& factored = {});

/// Smallest e with P_e >= 2^{eN}, searching e <= limit.
std::optional<unsigned> minimal_primorial_index(unsigned N, unsigned limit = 2000);

/// Hypotheses q^{N-2} > 2^{2N}, P_e >= 2^{eNm}, (q^n - 1)/r_i >= P_e; verdict of
/// q^{n/2-k} >= m (Π r_i)^{1-1/(Nm)} 2^{n-k} q^{n/N}, in log space with exact fallback.
/// Throws HypothesisFailed.
BoundReport asymptotic_criterion(std::uint64_t q, unsigned n, unsigned m, unsigned k, const std::vector<mpz_class>& r,
                                 unsigned N, unsigned e);

struct NumberPolFactorsResult {
  std::optional<unsigned> value;  // the procedure's Length, nullopt for ∅
  std::string branch;             // "gcd(q,n)", "gcd(q-1,n)", "gcd(q+1,n)" or "none"
  unsigned w_distinct = 0;
  unsigned w_multiplicity = 0;
  std::optional<unsigned> value_with_multiplicity;  // Length when w counts multiplicity
};

NumberPolFactorsResult number_pol_factors_detail(std::uint64_t q, unsigned n);
std::optional<unsigned> number_pol_factors(std::uint64_t q, unsigned n);

struct SumFactorsResult {
  mpq_class S;
  unsigned long u0 = 0;
  mpq_class T;  // value of T on exit (rational after phase 2)
};

SumFactorsResult sum_factors(const mpz_class& T, std::uint64_t p0);

struct SpecialSieveReport {
  std::uint64_t q = 0;
  unsigned n = 0;
  std::uint64_t p0 = 0;
  bool result = false;
  std::string outcome;  // "true", "false", "no-w1", "delta<=0", "q-even"
  std::optional<unsigned> w1;
  mpz_class ell = 1;
  mpz_class T_rest;  // (q^n - 1)/2 with the primes < p0 divided out
  unsigned w2 = 0;
  SumFactorsResult sums;
  mpq_class delta;
  mpq_class Delta;
  BoundReport bound;
};

SpecialSieveReport special_sieve_report(std::uint64_t q, unsigned n, std::uint64_t p0);
bool special_sieve(std::uint64_t q, unsigned n, std::uint64_t p0);

/// First prime p0 < limit for which special_sieve succeeds (last report if none).
SpecialSieveReport special_sieve_scan(std::uint64_t q, unsigned n, std::uint64_t limit = 1000);

/// The sieve plan behind a SpecialSieve run: m = 3, ℓ_i = ℓ, excluded primes the
/// primes of T_rest (factorized), no excluded polynomials.
SievePlan induced_sieve_plan(const SpecialSieveReport& rep);

/// q^{n - 2k} >= rhs^2 for rational rhs, any sign of n - 2k.
bool squared_power_at_least(std::uint64_t q, long exponent, const mpq_class& rhs, BoundValue* lhs_out = nullptr,
                            BoundValue* rhs_out = nullptr);

}  // namespace ffprog
