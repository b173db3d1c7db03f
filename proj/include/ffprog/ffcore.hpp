#pragma once

// The tower F_p ⊂ F_q ⊂ F_{q^n}. An element of F_{q^n} is a vector of n
// coefficients over F_q in the polynomial basis 1, y, ..., y^{n-1}, where y
// is a root of the extension modulus.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ffprog/basefield.hpp"
#include "ffprog/intnt.hpp"
#include "ffprog/poly.hpp"

namespace ffprog {

struct XnFactorization;

struct FieldElem {
  std::vector<BaseField::Elem> coeffs;

  bool operator==(const FieldElem&) const = default;
};

struct FieldOptions {
  /// Largest q^n accepted; 0 disables the check.
  std::uint64_t search_cap = 1ULL << 63;
  /// Discrete-log/Zech tables are built when q^n <= table_cap.
  std::uint64_t table_cap = 1ULL << 22;
  /// Mixed into every seeded search (moduli, generator).
  std::uint64_t seed = 0;
  /// Overrides for the moduli; they are checked for irreducibility.
  std::optional<std::vector<std::uint64_t>> base_modulus;
  std::optional<PolyFq> ext_modulus;
  /// Factor x^n - 1 over F_q at construction time.
  bool factor_xn = true;
  /// Factor q^n - 1 and find a generator; without it only arithmetic is available.
  bool find_generator = true;
};

class FieldCtx;
using FieldRef = std::shared_ptr<const FieldCtx>;

// Discrete logarithms w.r.t. the context generator, plus Zech logarithms
// Z(t) = log(1 + g^t). Elements are addressed by their index (see
// FieldCtx::index_of); logs are in [0, N) with N = q^n - 1 encoding zero.
class LogTable {
 public:
  using Log = std::uint32_t;

  LogTable(const FieldCtx& ctx);

  std::uint64_t group_size() const { return n_; }
  Log zero() const { return static_cast<Log>(n_); }
  Log log_of_index(std::uint64_t idx) const { return log_[idx]; }
  std::uint64_t index_of_log(Log t) const { return t == zero() ? 0 : exp_[t]; }

  Log mul(Log a, Log b) const {
    if (a == zero() || b == zero()) return zero();
    std::uint64_t t = std::uint64_t(a) + b;
    return static_cast<Log>(t >= n_ ? t - n_ : t);
  }
  Log add(Log a, Log b) const {
    if (a == zero()) return b;
    if (b == zero()) return a;
    std::uint64_t d = b >= a ? b - a : b + n_ - a;
    const Log z = zech_[d];
    if (z == zero()) return zero();
    std::uint64_t t = std::uint64_t(a) + z;
    return static_cast<Log>(t >= n_ ? t - n_ : t);
  }
  Log neg(Log a) const { return mul(a, neg_one_); }
  Log sub(Log a, Log b) const { return add(a, neg(b)); }
  /// a^(q^i).
  Log frobenius(Log a, unsigned i) const {
    if (a == zero()) return a;
    return static_cast<Log>(mulmod(a, qpow_[i % qpow_.size()], n_));
  }
  Log pow(Log a, std::uint64_t e) const {
    if (a == zero()) return e == 0 ? 0 : zero();
    return static_cast<Log>(mulmod(a, e % n_, n_));
  }

 private:
  std::uint64_t n_;
  Log neg_one_;
  std::vector<std::uint64_t> qpow_;  // q^i mod N
  std::vector<std::uint32_t> exp_;
  std::vector<Log> log_;
  std::vector<Log> zech_;
};

class FieldCtx {
 public:
  std::uint64_t p() const { return base_.p(); }
  unsigned s() const { return base_.s(); }
  unsigned n() const { return n_; }
  std::uint64_t q() const { return base_.q(); }
  /// q^n as an exact integer.
  const mpz_class& field_size() const { return size_; }
  /// q^n when it fits in 64 bits (always true for capped contexts).
  std::uint64_t size_u64() const;
  /// Factored q^n - 1 (value only when built without a generator).
  const FactoredInt& group_order() const { return group_order_; }

  const BaseField& base() const { return base_; }
  const PolyFq& ext_modulus() const { return ext_modulus_; }
  bool has_generator() const { return has_generator_; }
  /// Throws std::logic_error for contexts built without a generator.
  const FieldElem& generator() const;
  std::uint64_t seed() const { return seed_; }

  bool has_table() const { return table_ != nullptr; }
  const LogTable& table() const;
  bool has_xn() const { return xn_ != nullptr; }
  const XnFactorization& xn() const;

  FieldElem zero() const { return FieldElem{std::vector<BaseField::Elem>(n_, 0)}; }
  FieldElem one() const { return from_base(1); }
  FieldElem from_base(BaseField::Elem c) const;
  /// y^j.
  FieldElem basis(unsigned j) const;
  bool is_zero(const FieldElem& a) const;
  /// Coefficients in range and of length n.
  bool is_valid(const FieldElem& a) const;
  /// True iff a lies in F_q (all higher coefficients vanish).
  bool in_base(const FieldElem& a) const;

  FieldElem add(const FieldElem& a, const FieldElem& b) const;
  FieldElem sub(const FieldElem& a, const FieldElem& b) const;
  FieldElem neg(const FieldElem& a) const;
  FieldElem mul(const FieldElem& a, const FieldElem& b) const;
  FieldElem scale(const FieldElem& a, BaseField::Elem c) const;
  FieldElem pow(const FieldElem& a, const mpz_class& e) const;
  FieldElem inv(const FieldElem& a) const;

  /// a^q, via the precomputed (F_q-linear) Frobenius matrix.
  FieldElem frobenius(const FieldElem& a) const;
  /// Tr_{F_{q^n}/F_p}(a), a residue mod p.
  std::uint64_t trace_to_prime(const FieldElem& a) const;
  /// Tr_{F_{q^n}/F_q}(a).
  BaseField::Elem trace_to_base(const FieldElem& a) const;
  /// Exact multiplicative order; throws ZeroElement for 0.
  mpz_class mult_order(const FieldElem& a) const;

  /// Bijection F_{q^n} <-> [0, q^n): index = sum_j coeff_j q^j.
  std::uint64_t index_of(const FieldElem& a) const;
  FieldElem element_at(std::uint64_t index) const;

  /// "c0,c1,..." over F_q.
  std::string format(const FieldElem& a) const;
  /// Inverse of format; also accepts the literal "1" and "0".
  FieldElem parse(const std::string& text) const;

 private:
  friend FieldRef make_field(std::uint64_t p, unsigned s, unsigned n, const FieldOptions& opts);
  FieldCtx(BaseField base, unsigned n);

  BaseField base_;
  unsigned n_;
  mpz_class size_;
  PolyFq ext_modulus_;
  FactoredInt group_order_;
  FieldElem generator_;
  std::vector<FieldElem> frob_cols_;  // (y^j)^q
  std::uint64_t seed_ = 0;
  bool has_generator_ = false;
  std::shared_ptr<const LogTable> table_;
  std::shared_ptr<const XnFactorization> xn_;
};

/// Builds the tower with seeded (reproducible) moduli and generator.
/// Throws NotPrime, TooLarge.
FieldRef make_field(std::uint64_t p, unsigned s, unsigned n, const FieldOptions& opts = {});
/// Same, from q = p^s; throws NotPrime when q is not a prime power.
FieldRef make_field_q(std::uint64_t q, unsigned n, const FieldOptions& opts = {});

/// Deterministic base-field modulus for F_{p^s}.
std::vector<std::uint64_t> default_base_modulus(std::uint64_t p, unsigned s, std::uint64_t seed = 0);

}  // namespace ffprog
