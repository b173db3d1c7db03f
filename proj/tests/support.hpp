#pragma once

// Shared fixtures and brute-force oracles. The oracles use only field
// arithmetic and exhaustive enumeration, never the tests under scrutiny.

#include <cstdint>
#include <set>
#include <vector>

#include "ffprog/ffcore.hpp"
#include "ffprog/fqpoly.hpp"
#include "ffprog/intnt.hpp"

namespace ffprog::testing {

// F_9 = F_3[i], i^2 = -1.
inline FieldRef f9() {
  FieldOptions o;
  o.ext_modulus = PolyFq({1, 0, 1});
  return make_field(3, 1, 2, o);
}

inline FieldElem elem(std::vector<BaseField::Elem> c) { return FieldElem{std::move(c)}; }

inline std::vector<FieldElem> all_elements(const FieldCtx& F) {
  std::vector<FieldElem> v;
  for (std::uint64_t i = 0; i < F.size_u64(); ++i) v.push_back(F.element_at(i));
  return v;
}

// (q, n) pairs with q^n <= limit, q a prime power, n >= n_min.
inline std::vector<std::pair<std::uint64_t, unsigned>> small_fields(std::uint64_t limit, unsigned n_min = 1) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t q = 2; q <= limit; ++q) {
    std::uint64_t p;
    unsigned s;
    if (!prime_power_decompose(q, p, s)) continue;
    std::uint64_t size = q;
    for (unsigned n = 1; size <= limit; ++n, size *= q)
      if (n >= n_min) out.emplace_back(q, n);
  }
  return out;
}

// Multiplicative order by repeated multiplication.
inline std::uint64_t naive_order(const FieldCtx& F, const FieldElem& a) {
  FieldElem x = a;
  std::uint64_t k = 1;
  while (!(x == F.one())) x = F.mul(x, a), ++k;
  return k;
}

// Rank over F_q of the conjugates a, a^q, ..., a^{q^{n-1}}; k-normality is n minus this.
inline unsigned conjugate_rank(const FieldCtx& F, const FieldElem& a) {
  const BaseField& B = F.base();
  const unsigned n = F.n();
  std::vector<std::vector<BaseField::Elem>> rows;
  FieldElem x = a;
  for (unsigned i = 0; i < n; ++i) rows.push_back(x.coeffs), x = F.frobenius(x);
  unsigned rank = 0;
  for (unsigned col = 0; col < n && rank < n; ++col) {
    unsigned piv = rank;
    while (piv < n && rows[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(rows[piv], rows[rank]);
    const auto inv = B.inv(rows[rank][col]);
    for (auto& v : rows[rank]) v = B.mul(v, inv);
    for (unsigned r = 0; r < n; ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const auto c = rows[r][col];
      for (unsigned j = 0; j < n; ++j) rows[r][j] = B.sub(rows[r][j], B.mul(c, rows[rank][j]));
    }
    ++rank;
  }
  return rank;
}

// Image of β -> h ∘ β, by enumeration.
inline std::set<std::uint64_t> action_image(const FieldCtx& F, const PolyFq& h) {
  std::set<std::uint64_t> img;
  for (std::uint64_t i = 0; i < F.size_u64(); ++i) img.insert(F.index_of(module_action(F, h, F.element_at(i))));
  return img;
}

// (R, r)-freeness from the definition: a ∈ C_r = {b^r} and a is no ℓ-th power of C_r for a prime ℓ | R.
struct FreeOracle {
  const FieldCtx& F;
  std::set<std::uint64_t> c_r;
  std::vector<std::set<std::uint64_t>> powers;  // per prime of R

  FreeOracle(const FieldCtx& ctx, std::uint64_t R, std::uint64_t r) : F(ctx) {
    for (std::uint64_t i = 1; i < F.size_u64(); ++i)
      c_r.insert(F.index_of(F.pow(F.element_at(i), mpz_class(static_cast<unsigned long>(r)))));
    for (const mpz_class& l : factorize(R).primes()) {
      std::set<std::uint64_t> s;
      for (std::uint64_t c : c_r) s.insert(F.index_of(F.pow(F.element_at(c), l)));
      powers.push_back(std::move(s));
    }
  }
  bool operator()(const FieldElem& a) const {
    const std::uint64_t i = F.index_of(a);
    if (!c_r.count(i)) return false;
    for (const auto& s : powers)
      if (s.count(i)) return false;
    return true;
  }
};

}  // namespace ffprog::testing
