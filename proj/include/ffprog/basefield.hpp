#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace ffprog {

// The field F_q, q = p^s. Elements are packed integers in [0, q): the
// base-p digits are the coefficients of the element as a polynomial in the
// adjoined root z (low degree first). For s = 1 an element is its residue.
class BaseField {
 public:
  using Elem = std::uint64_t;

  static constexpr std::uint64_t kMaxTabulatedOrder = 1u << 24;

  explicit BaseField(std::uint64_t p);
  // modulus: monic irreducible polynomial of degree s over F_p, low degree first.
  BaseField(std::uint64_t p, std::vector<std::uint64_t> modulus);

  std::uint64_t p() const { return p_; }
  unsigned s() const { return s_; }
  std::uint64_t q() const { return q_; }
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  bool is_prime_field() const { return s_ == 1; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;

  // Residues mod p; the prime subfield sits at digit 0.
  std::vector<std::uint64_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint64_t>& d) const;

  // Tr_{F_q/F_p}.
  std::uint64_t trace_to_prime(Elem a) const;

  bool operator==(const BaseField& o) const { return p_ == o.p_ && modulus_ == o.modulus_; }

 private:
  Elem slow_mul(Elem a, Elem b) const;

  std::uint64_t p_;
  unsigned s_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modulus_;
  std::vector<std::uint64_t> digit_pow_;  // p^i
  // Only for s > 1: discrete log tables w.r.t. a generator of F_q^*.
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace ffprog
