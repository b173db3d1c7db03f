#pragma once

// Polynomials over F_q acting on F_{q^n}: the module action
// f ∘ a = Σ f_i a^{q^i}, F_q-orders, the factorization of x^n - 1 and the
// polynomial analogues of φ, μ and W.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "ffprog/ffcore.hpp"
#include "ffprog/poly.hpp"

namespace ffprog {

struct FactorShape {
  unsigned degree;
  unsigned multiplicity;
};

/// Degrees and multiplicities of the irreducible factors of x^n - 1 over F_q,
/// from q-cyclotomic cosets; needs no field arithmetic.
struct XnShape {
  std::uint64_t q = 0;
  unsigned n = 0;
  std::vector<FactorShape> factors;  // nondecreasing degree

  std::size_t distinct() const { return factors.size(); }
};

struct XnFactor {
  PolyFq poly;
  unsigned multiplicity;
};

struct XnFactorization {
  std::uint64_t q = 0;
  unsigned n = 0;
  PolyFq xn;                     // x^n - 1
  std::vector<XnFactor> factors;  // sorted by PolyFq ordering

  std::size_t distinct() const { return factors.size(); }
  XnShape shape() const;
};

/// A monic divisor of x^n - 1, as exponents over XnFactorization::factors.
struct XnDivisor {
  std::vector<unsigned> exps;

  bool operator==(const XnDivisor&) const = default;
};

/// q-cyclotomic cosets modulo m (gcd(q, m) = 1), each sorted, ordered by least member.
std::vector<std::vector<std::uint64_t>> cyclotomic_cosets(std::uint64_t q, std::uint64_t m);

XnShape xn_factor_shape(std::uint64_t q, unsigned n);

/// Factors x^n - 1 over the base field of ctx, n = ctx.n() unless given.
XnFactorization factor_xn_minus_1(const FieldCtx& ctx);
XnFactorization factor_xn_minus_1(const FieldCtx& ctx, unsigned n);

FieldElem module_action(const FieldCtx& ctx, const PolyFq& f, const FieldElem& a);

/// Minimal monic annihilator of a among divisors of x^n - 1 (1 for a = 0).
PolyFq fq_order(const FieldCtx& ctx, const FieldElem& a);
XnDivisor fq_order_divisor(const FieldCtx& ctx, const FieldElem& a);

PolyFq divisor_poly(const FieldCtx& ctx, const XnDivisor& d);
unsigned divisor_degree(const XnFactorization& xn, const XnDivisor& d);
XnDivisor full_divisor(const XnFactorization& xn);  // x^n - 1 itself
XnDivisor unit_divisor(const XnFactorization& xn);  // 1
/// Exponents of a monic f over the factors of x^n - 1, or nullopt if f ∤ x^n - 1.
std::optional<XnDivisor> factor_over(const FieldCtx& ctx, const PolyFq& f);
/// (x^n - 1) / d.
XnDivisor complement(const XnFactorization& xn, const XnDivisor& d);

mpz_class phi_q(std::uint64_t q, std::span<const FactorShape> factors);
mpz_class phi_q(const XnFactorization& xn, const XnDivisor& d);
/// Throws ZeroPolynomial for f = 0 and NotADivisorPoly if f ∤ x^n - 1.
mpz_class phi_q(const FieldCtx& ctx, const PolyFq& f);

int mobius_q(const XnDivisor& d);
int mobius_q(const FieldCtx& ctx, const PolyFq& f);

mpz_class w_poly(const XnDivisor& d);
mpz_class w_poly(const FieldCtx& ctx, const PolyFq& f);
std::size_t distinct_factors(const XnDivisor& d);

/// Every monic divisor of x^n - 1, in nondecreasing degree (ties: exponent vectors, lexicographic).
std::vector<XnDivisor> monic_divisors(const XnFactorization& xn);

/// Lexicographically least (PolyFq ordering) monic divisor of degree k.
std::optional<XnDivisor> auto_k_divisor(const FieldCtx& ctx, unsigned k);

/// Upper bound on the number of irreducible factors of (x^n - 1)/f for a
/// quadratic f: floor(min{n-2, n/a + b - 1}) over the three (a, b) pairs.
/// Throws BadDegree for n < 5.
mpz_class factor_count_bound(std::uint64_t q, unsigned n);

struct FactorBoundCandidate {
  unsigned a;  // 0 for the n - 2 candidate
  mpq_class b;
  mpq_class value;
};
std::vector<FactorBoundCandidate> factor_count_candidates(std::uint64_t q, unsigned n);

}  // namespace ffprog

namespace ffprog {

/// The F_q-linear map a -> f ∘ a as an n x n matrix on coefficient vectors.
struct LinearMap {
  unsigned n = 0;
  std::vector<BaseField::Elem> m;  // row-major

  BaseField::Elem at(unsigned i, unsigned j) const { return m[std::size_t(i) * n + j]; }
  FieldElem apply(const BaseField& F, const FieldElem& a) const;
  bool kills(const BaseField& F, const FieldElem& a) const;
};

LinearMap action_matrix(const FieldCtx& ctx, const PolyFq& f);

}  // namespace ffprog
