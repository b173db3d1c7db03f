#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ffprog/basefield.hpp"

namespace ffprog {

/// Polynomial over F_q, coefficients low degree first, no high zero coefficients.
struct PolyFq {
  std::vector<BaseField::Elem> coeffs;

  PolyFq() = default;
  explicit PolyFq(std::vector<BaseField::Elem> c) : coeffs(std::move(c)) { trim(); }

  static PolyFq constant(BaseField::Elem c) { return PolyFq({c}); }
  static PolyFq x_power(unsigned k) {
    std::vector<BaseField::Elem> c(k + 1, 0);
    c[k] = 1;
    return PolyFq(std::move(c));
  }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  bool is_monic() const { return !coeffs.empty() && coeffs.back() == 1; }
  BaseField::Elem lead() const { return coeffs.empty() ? 0 : coeffs.back(); }
  BaseField::Elem operator[](std::size_t i) const { return i < coeffs.size() ? coeffs[i] : 0; }

  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }

  bool operator==(const PolyFq&) const = default;
  // Degree first, then coefficients from the top down.
  bool operator<(const PolyFq& o) const;
};

PolyFq poly_add(const BaseField& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_sub(const BaseField& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_mul(const BaseField& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_scale(const BaseField& F, const PolyFq& a, BaseField::Elem c);
/// Throws ZeroPolynomial on division by zero.
void poly_divmod(const BaseField& F, const PolyFq& a, const PolyFq& b, PolyFq& quot, PolyFq& rem);
PolyFq poly_mod(const BaseField& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_div_exact(const BaseField& F, const PolyFq& a, const PolyFq& b);
PolyFq poly_monic(const BaseField& F, const PolyFq& a);
/// Monic gcd (zero only if both inputs are zero).
PolyFq poly_gcd(const BaseField& F, PolyFq a, PolyFq b);
PolyFq poly_powmod(const BaseField& F, PolyFq base, const mpz_class& e, const PolyFq& mod);
bool poly_divides(const BaseField& F, const PolyFq& d, const PolyFq& a);

/// x^n - 1.
PolyFq xn_minus_one(const BaseField& F, unsigned n);

/// Ben-Or: gcd(x^{q^i} - x, f) = 1 for i <= deg/2.
bool is_irreducible(const BaseField& F, const PolyFq& f);

PolyFq random_monic(const BaseField& F, unsigned degree, std::mt19937_64& rng);
/// Seeded random search for a monic irreducible polynomial of the given degree.
PolyFq find_irreducible(const BaseField& F, unsigned degree, std::uint64_t seed);

/// "c0,c1,...,cd" (low degree first, packed F_q values).
std::string to_string(const PolyFq& f);

}  // namespace ffprog
