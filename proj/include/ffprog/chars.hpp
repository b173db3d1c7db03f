#pragma once

// Numerical character machinery at desk scale. Multiplicative characters are
// η_e(g^t) = exp(2πi e t / (q^n - 1)); additive characters are
// ψ_c(a) = exp(2πi Tr(c a) / p). Everything here is verification only.

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "ffprog/ffcore.hpp"
#include "ffprog/fqpoly.hpp"

namespace ffprog {

using Complex = std::complex<double>;

/// Minimal monic h | x^n - 1 with ψ_c(h ∘ a) = 1 for all a (exact, mod-p checks on a basis).
XnDivisor add_char_fq_order_divisor(const FieldCtx& ctx, const FieldElem& c);
PolyFq add_char_fq_order(const FieldCtx& ctx, const FieldElem& c);

class CharacterTables {
 public:
  static constexpr std::uint64_t kDefaultCap = 3000;

  /// Throws CapExceeded when q^n > cap.
  explicit CharacterTables(FieldRef ctx, std::uint64_t cap = kDefaultCap);

  const FieldCtx& ctx() const { return *ctx_; }
  std::uint64_t size() const { return size_; }
  std::uint64_t group_size() const { return size_ - 1; }

  /// Index of a * b.
  std::uint64_t mul_index(std::uint64_t a, std::uint64_t b) const;
  /// Discrete log of a nonzero index.
  std::uint64_t log_of(std::uint64_t idx) const { return log_[idx]; }
  std::uint64_t trace_of(std::uint64_t idx) const { return trace_[idx]; }

  Complex mult_char(std::uint64_t e, std::uint64_t idx) const;
  Complex add_char(std::uint64_t c, std::uint64_t idx) const;
  Complex root_n(std::uint64_t k) const { return root_n_[k % group_size()]; }
  Complex root_p(std::uint64_t k) const { return root_p_[k % root_p_.size()]; }

  /// Monic divisors of x^n - 1 in the order of monic_divisors().
  const std::vector<XnDivisor>& poly_divisors() const { return poly_divs_; }
  std::size_t poly_divisor_position(const XnDivisor& d) const;
  /// F_q-order of ψ_c, as a position in poly_divisors().
  std::size_t add_order_of(std::uint64_t c) const { return add_order_[c]; }

  /// Positive divisors of q^n - 1, increasing.
  const std::vector<std::uint64_t>& int_divisors() const { return int_divs_; }
  std::size_t int_divisor_position(std::uint64_t d) const;
  /// Order of η_e as a position in int_divisors().
  std::size_t mult_order_of(std::uint64_t e) const { return mult_order_[e]; }

  /// Σ ψ(a) over additive characters grouped by F_q-order.
  std::vector<Complex> additive_sums(std::uint64_t idx) const;
  /// Σ η(a) over multiplicative characters grouped by order; a != 0.
  std::vector<Complex> multiplicative_sums(std::uint64_t idx) const;

 private:
  FieldRef ctx_;
  std::uint64_t size_;
  std::vector<std::uint64_t> log_;    // N for index 0
  std::vector<std::uint64_t> exp_;    // index of g^t
  std::vector<std::uint64_t> trace_;  // Tr_{F_{q^n}/F_p}
  std::vector<Complex> root_n_, root_p_;
  std::vector<XnDivisor> poly_divs_;
  std::map<std::vector<unsigned>, std::size_t> poly_pos_;
  std::vector<std::size_t> add_order_;
  std::vector<std::uint64_t> int_divs_;
  std::vector<std::size_t> mult_order_;
};

/// Θ(g) Σ_{h|g} μ_q(h)/Φ_q(h) Σ_{ord χ = h} χ(a): 1 if a is g-free, else 0.
Complex omega_g(const CharacterTables& t, const std::vector<Complex>& add_sums, const XnDivisor& g);
Complex omega_g(const CharacterTables& t, const FieldElem& a, const XnDivisor& g);
Complex omega_g(const CharacterTables& t, const FieldElem& a, const PolyFq& g);

/// θ(R)/r Σ_{d|Rr} μ(d_(r))/φ(d_(r)) Σ_{ord η = d} η(a). Throws NotADivisor, ZeroElement.
Complex indicator_Rr(const CharacterTables& t, const std::vector<Complex>& mult_sums, std::uint64_t R, std::uint64_t r);
Complex indicator_Rr(const CharacterTables& t, const FieldElem& a, std::uint64_t R, std::uint64_t r);

/// q^{-n} Σ_ψ ψ(a).
Complex i0(const CharacterTables& t, const FieldElem& a);

struct WeilOptions {
  std::uint64_t seed = 1;
  unsigned case_b_sampled_sums = 48;   // per divisor f
  unsigned cotaparaf_tuples = 24;      // exponent tuples per (m, β)
  unsigned cotaparaf_add_chars = 6;    // nontrivial ψ per tuple for part (b)
  double tolerance = 1e-6;
};

struct WeilReport {
  std::uint64_t r = 1;
  std::uint64_t case_a_sums = 0;
  double case_a_max = 0;    // largest |Σ η(a) ψ(a^r)|
  double case_a_bound = 0;  // r q^{n/2}
  bool case_a_ok = true;

  std::uint64_t case_b_sums = 0;
  double case_b_max_error = 0;  // vs q^n or 0
  std::uint64_t case_b_preimage_checks = 0;
  bool case_b_ok = true;

  std::uint64_t cotaparaf_sums = 0;
  double cotaparaf_max_ratio = 0;  // |sum| / bound, over sums with a positive bound
  bool cotaparaf_ok = true;

  bool ok() const { return case_a_ok && case_b_ok && cotaparaf_ok; }
};

/// Throws NotADivisor if r ∤ q^n - 1.
WeilReport check_weil_bounds(const CharacterTables& t, std::uint64_t r, const WeilOptions& opts = {});

}  // namespace ffprog
