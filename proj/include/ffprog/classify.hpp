#pragma once

// Direct tests of the element properties: r-primitive, (R, r)-free, g-free
// and k-normal, and the construction α = f ∘ β of k-normal elements.

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "ffprog/ffcore.hpp"
#include "ffprog/fqpoly.hpp"

namespace ffprog {

struct ElementProfile {
  mpz_class order;    // 0 for the zero element
  mpz_class r_value;  // (q^n - 1) / order, 0 for the zero element
  PolyFq fq_order;
  unsigned k_value = 0;
};

/// Throws ZeroElement for a = 0 and NotADivisor if r ∤ q^n - 1.
bool is_r_primitive(const FieldCtx& ctx, const FieldElem& a, const mpz_class& r);

/// a lies in C_r and a^{M/l} != 1 for every prime l | R, M = (q^n - 1)/r.
/// Throws NotADivisor unless r | q^n - 1 and R | M; ZeroElement for a = 0.
bool is_Rr_free(const FieldCtx& ctx, const FieldElem& a, const mpz_class& R, const mpz_class& r);

/// Throws NotADivisorPoly if g ∤ x^n - 1.
bool is_g_free(const FieldCtx& ctx, const FieldElem& a, const PolyFq& g);
bool is_g_free(const FieldCtx& ctx, const FieldElem& a, const XnDivisor& g);

/// deg gcd(Σ a^{q^i} x^{n-1-i}, x^n - 1) over F_{q^n}[x].
unsigned k_normality_gcd(const FieldCtx& ctx, const FieldElem& a);
/// n - deg Ord(a).
unsigned k_normality_order(const FieldCtx& ctx, const FieldElem& a);
/// Both of the above; throws std::logic_error if they disagree.
unsigned k_normality(const FieldCtx& ctx, const FieldElem& a);

ElementProfile profile(const FieldCtx& ctx, const FieldElem& a);

/// f ∘ beta for a normal beta and a monic f | x^n - 1; the result is deg(f)-normal.
/// Throws NotNormal, NotADivisorPoly.
FieldElem construct_k_normal(const FieldCtx& ctx, const PolyFq& f, const FieldElem& beta);

/// Least-index normal element.
FieldElem find_normal_element(const FieldCtx& ctx);

// Solutions of f ∘ γ = target: a particular solution plus a kernel basis.
struct PreimageSet {
  FieldElem particular;
  std::vector<FieldElem> kernel;
};
std::optional<PreimageSet> solve_action(const FieldCtx& ctx, const LinearMap& f, const FieldElem& target);

/// Some γ with f ∘ γ = target and γ g-free, scanning the solution coset in a fixed order.
std::optional<FieldElem> free_preimage(const FieldCtx& ctx, const LinearMap& f, const FieldElem& target,
                                       const std::vector<LinearMap>& g_tests);

/// Maps ((x^n - 1)/h) ∘ · for each irreducible h | g; γ is g-free iff none kills γ.
std::vector<LinearMap> g_free_tests(const FieldCtx& ctx, const XnDivisor& g);
bool passes(const BaseField& F, const std::vector<LinearMap>& tests, const FieldElem& a);

}  // namespace ffprog
