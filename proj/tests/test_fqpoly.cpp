#include <gtest/gtest.h>

#include <map>

#include "ffprog/classify.hpp"
#include "ffprog/error.hpp"
#include "support.hpp"

using namespace ffprog;
using namespace ffprog::testing;

namespace {

std::vector<std::pair<unsigned, unsigned>> shape_of(const XnFactorization& x) {
  std::vector<std::pair<unsigned, unsigned>> v;
  for (const auto& f : x.factors) v.emplace_back(f.poly.degree(), f.multiplicity);
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<std::pair<unsigned, unsigned>> shape_of(const XnShape& x) {
  std::vector<std::pair<unsigned, unsigned>> v;
  for (const auto& f : x.factors) v.emplace_back(f.degree, f.multiplicity);
  std::sort(v.begin(), v.end());
  return v;
}

std::map<std::vector<unsigned>, unsigned long> order_histogram(const FieldCtx& F) {
  std::map<std::vector<unsigned>, unsigned long> h;
  for (std::uint64_t i = 0; i < F.size_u64(); ++i) ++h[fq_order_divisor(F, F.element_at(i)).exps];
  return h;
}

}  // namespace

TEST(ModuleAction, Examples) {
  auto F = f9();
  const FieldElem b = elem({1, 1});
  EXPECT_EQ(module_action(*F, PolyFq::constant(1), b), b);
  EXPECT_EQ(module_action(*F, PolyFq({2, 1}), b), F->sub(F->frobenius(b), b));
  EXPECT_EQ(module_action(*F, PolyFq({1, 1}), b), F->from_base(2));
}

TEST(ModuleAction, IsRingAction) {
  auto F = make_field(3, 1, 4);
  const PolyFq f({1, 2, 0, 1}), g({2, 1, 1});
  for (std::uint64_t i = 0; i < F->size_u64(); i += 7) {
    const FieldElem a = F->element_at(i);
    EXPECT_EQ(module_action(*F, poly_mul(F->base(), f, g), a), module_action(*F, f, module_action(*F, g, a)));
    EXPECT_EQ(module_action(*F, poly_add(F->base(), f, g), a), F->add(module_action(*F, f, a), module_action(*F, g, a)));
  }
}

TEST(FqOrder, Examples) {
  auto F = f9();
  EXPECT_EQ(fq_order(*F, F->zero()), PolyFq::constant(1));
  EXPECT_EQ(fq_order(*F, F->one()), PolyFq({2, 1}));
  EXPECT_EQ(fq_order(*F, elem({1, 1})), PolyFq({2, 0, 1}));
}

TEST(FqOrder, MinimalAnnihilatingDivisor) {
  for (auto [q, n] : small_fields(729, 2)) {
    auto F = make_field_q(q, n);
    const auto divs = monic_divisors(F->xn());
    for (std::uint64_t i = 0; i < F->size_u64(); ++i) {
      const FieldElem a = F->element_at(i);
      const PolyFq h = fq_order(*F, a);
      ASSERT_TRUE(poly_divides(F->base(), h, F->xn().xn));
      ASSERT_TRUE(F->is_zero(module_action(*F, h, a)));
      // first annihilating divisor in degree order has the same degree
      for (const auto& d : divs) {
        const PolyFq p = divisor_poly(*F, d);
        if (F->is_zero(module_action(*F, p, a))) {
          ASSERT_EQ(p.degree(), h.degree());
          break;
        }
      }
    }
  }
}

TEST(FqOrder, DegreeEqualsConjugateRank) {
  for (auto [q, n] : small_fields(2000, 2)) {
    auto F = make_field_q(q, n);
    for (std::uint64_t i = 0; i < F->size_u64(); ++i) {
      const FieldElem a = F->element_at(i);
      ASSERT_EQ(static_cast<unsigned>(fq_order(*F, a).degree()), conjugate_rank(*F, a)) << q << "^" << n << " #" << i;
    }
  }
}

TEST(FqOrder, CountsMatchPhiQ) {
  for (auto [q, n] : small_fields(2000, 1)) {
    auto F = make_field_q(q, n);
    const auto hist = order_histogram(*F);
    mpz_class total = 0;
    for (const auto& d : monic_divisors(F->xn())) {
      const mpz_class phi = phi_q(F->xn(), d);
      total += phi;
      auto it = hist.find(d.exps);
      ASSERT_EQ(phi, it == hist.end() ? 0UL : it->second) << q << "^" << n;
    }
    ASSERT_EQ(total, F->field_size());
  }
}

TEST(FactorXn, Examples) {
  auto F34 = make_field(3, 1, 4);
  const auto& x34 = F34->xn();
  ASSERT_EQ(x34.distinct(), 3u);
  EXPECT_EQ(x34.factors[0].poly, PolyFq({1, 1}));
  EXPECT_EQ(x34.factors[1].poly, PolyFq({2, 1}));
  EXPECT_EQ(x34.factors[2].poly, PolyFq({1, 0, 1}));

  auto F33 = make_field(3, 1, 3);
  ASSERT_EQ(F33->xn().distinct(), 1u);
  EXPECT_EQ(F33->xn().factors[0].poly, PolyFq({2, 1}));
  EXPECT_EQ(F33->xn().factors[0].multiplicity, 3u);

  auto F23 = make_field(2, 1, 3);
  ASSERT_EQ(F23->xn().distinct(), 2u);
  EXPECT_EQ(F23->xn().factors[0].poly, PolyFq({1, 1}));
  EXPECT_EQ(F23->xn().factors[1].poly, PolyFq({1, 1, 1}));
}

TEST(FactorXn, RecomposesIntoIrreducibles) {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 49}) {
    auto F = make_field_q(q, 1);
    for (unsigned n = 1; n <= 40; ++n) {
      const XnFactorization x = factor_xn_minus_1(*F, n);
      PolyFq prod = PolyFq::constant(1);
      for (const auto& f : x.factors) {
        ASSERT_TRUE(is_irreducible(F->base(), f.poly)) << q << " " << n;
        ASSERT_TRUE(f.poly.is_monic());
        for (unsigned e = 0; e < f.multiplicity; ++e) prod = poly_mul(F->base(), prod, f.poly);
      }
      ASSERT_EQ(prod, xn_minus_one(F->base(), n));
      ASSERT_EQ(shape_of(x), shape_of(xn_factor_shape(q, n)));
      for (std::size_t i = 1; i < x.factors.size(); ++i) ASSERT_TRUE(x.factors[i - 1].poly < x.factors[i].poly);
    }
  }
}

TEST(Cosets, Example) {
  EXPECT_EQ(cyclotomic_cosets(3, 4), (std::vector<std::vector<std::uint64_t>>{{0}, {1, 3}, {2}}));
  EXPECT_EQ(cyclotomic_cosets(2, 3), (std::vector<std::vector<std::uint64_t>>{{0}, {1, 2}}));
}

TEST(PhiQ, Examples) {
  auto F = make_field(3, 1, 4);
  EXPECT_EQ(phi_q(*F, PolyFq({2, 1})), 2);
  EXPECT_EQ(phi_q(*F, F->xn().xn), 32);
  auto F33 = make_field(3, 1, 3);
  EXPECT_EQ(phi_q(*F33, F33->xn().xn), 18);
  try {
    phi_q(*F, PolyFq());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroPolynomial);
  }
}

TEST(PhiQ, EqualsUnitCount) {
  // |(F_q[x]/f)^*| by enumeration of residues coprime to f
  auto F = make_field(3, 1, 6);
  for (const auto& d : monic_divisors(F->xn())) {
    const PolyFq f = divisor_poly(*F, d);
    if (f.degree() > 5) continue;
    unsigned long units = 0, total = 1;
    for (int i = 0; i < f.degree(); ++i) total *= 3;
    for (unsigned long idx = 0; idx < total; ++idx) {
      std::vector<BaseField::Elem> c;
      for (unsigned long t = idx; c.size() < static_cast<std::size_t>(f.degree()); t /= 3) c.push_back(t % 3);
      const PolyFq a(c);
      if (!a.is_zero() && poly_gcd(F->base(), a, f).degree() == 0) ++units;
    }
    EXPECT_EQ(phi_q(F->xn(), d), f.degree() == 0 ? 1UL : units) << to_string(f);
  }
}

TEST(PhiQ, MultiplicativeOnCoprime) {
  auto F = make_field(5, 1, 12);
  const auto& x = F->xn();
  for (const auto& a : monic_divisors(x))
    for (const auto& b : monic_divisors(x)) {
      bool coprime = true;
      XnDivisor ab = a;
      for (std::size_t i = 0; i < a.exps.size(); ++i) {
        if (a.exps[i] && b.exps[i]) coprime = false;
        ab.exps[i] += b.exps[i];
      }
      if (coprime) ASSERT_EQ(phi_q(x, a) * phi_q(x, b), phi_q(x, ab));
    }
}

TEST(MobiusQ, Examples) {
  auto F = make_field(3, 1, 6);
  EXPECT_EQ(mobius_q(*F, PolyFq::constant(1)), 1);
  EXPECT_EQ(mobius_q(*F, PolyFq({2, 0, 1})), 1);
  EXPECT_EQ(mobius_q(*F, PolyFq({1, 1, 1})), 0);
}

TEST(WPoly, Examples) {
  auto F = make_field(3, 1, 4);
  EXPECT_EQ(w_poly(*F, PolyFq::constant(1)), 1);
  EXPECT_EQ(w_poly(*F, F->xn().xn), 8);
  auto F33 = make_field(3, 1, 3);
  EXPECT_EQ(w_poly(*F33, F33->xn().xn), 2);
}

TEST(MonicDivisors, Examples) {
  auto F = make_field(3, 1, 4);
  EXPECT_EQ(monic_divisors(F->xn()).size(), 8u);
  auto F33 = make_field(3, 1, 3);
  const auto d = monic_divisors(F33->xn());
  ASSERT_EQ(d.size(), 4u);
  for (unsigned e = 0; e < 4; ++e) EXPECT_EQ(d[e].exps, std::vector<unsigned>{e});
  auto F1 = make_field(5, 1, 1);
  EXPECT_EQ(monic_divisors(F1->xn()).size(), 2u);
}

TEST(MonicDivisors, NondecreasingDegreeAndExhaustive) {
  auto F = make_field(2, 1, 12);
  const auto d = monic_divisors(F->xn());
  unsigned long expected = 1;
  for (const auto& f : F->xn().factors) expected *= f.multiplicity + 1;
  ASSERT_EQ(d.size(), expected);
  for (std::size_t i = 1; i < d.size(); ++i) EXPECT_LE(divisor_degree(F->xn(), d[i - 1]), divisor_degree(F->xn(), d[i]));
}

TEST(AutoK, LeastDivisorOfDegree) {
  auto F = make_field(3, 1, 4);
  EXPECT_EQ(divisor_poly(*F, *auto_k_divisor(*F, 1)), PolyFq({1, 1}));
  EXPECT_EQ(divisor_poly(*F, *auto_k_divisor(*F, 2)), PolyFq({1, 0, 1}));
  auto F7 = make_field(3, 1, 7);
  EXPECT_FALSE(auto_k_divisor(*F7, 2).has_value());
}

TEST(FactorCountBound, Examples) {
  bool saw_b5 = false, saw_20 = false, saw_11 = false;
  for (const auto& c : factor_count_candidates(3, 13))
    if (c.a == 4) saw_b5 = c.b == 5;
  for (const auto& c : factor_count_candidates(5, 20))
    if (c.a == 3) saw_20 = c.b == 6 && c.value == mpq_class(20, 3) + 5;
  for (const auto& c : factor_count_candidates(101, 13))
    if (c.a == 0) saw_11 = c.value == 11;
  EXPECT_TRUE(saw_b5);
  EXPECT_TRUE(saw_20);
  EXPECT_TRUE(saw_11);
  EXPECT_EQ(factor_count_bound(101, 13), 11);
  try {
    factor_count_bound(3, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadDegree);
  }
}

// The bound concerns (x^n - 1)/f for a quadratic f | x^n - 1.
TEST(FactorCountBound, BoundsQuotientByEveryQuadratic) {
  for (std::uint64_t q : {3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 25, 27, 29, 31, 49}) {
    auto F = make_field_q(q, 1);
    for (unsigned n = 5; n <= 36; ++n) {
      const XnFactorization x = factor_xn_minus_1(*F, n);
      const mpz_class bound = factor_count_bound(q, n);
      // Quadratic divisors: one irreducible quadratic, or two linear factors.
      std::vector<XnDivisor> quads;
      const std::size_t w = x.distinct();
      for (std::size_t i = 0; i < w; ++i) {
        const unsigned di = x.factors[i].poly.degree();
        if (di == 2 || (di == 1 && x.factors[i].multiplicity >= 2)) {
          XnDivisor d = unit_divisor(x);
          d.exps[i] = 2 / di;
          quads.push_back(d);
        }
        for (std::size_t j = i + 1; j < w && di == 1; ++j) {
          if (x.factors[j].poly.degree() != 1) continue;
          XnDivisor d = unit_divisor(x);
          d.exps[i] = d.exps[j] = 1;
          quads.push_back(d);
        }
      }
      for (const auto& d : quads) {
        ASSERT_EQ(divisor_degree(x, d), 2u);
        ASSERT_LE(mpz_class(distinct_factors(complement(x, d))), bound) << q << " " << n;
      }
    }
  }
}

// Literal "distinct factors of x^n - 1 <= bound + 1" fails when x^n - 1 splits completely.
TEST(FactorCountBound, FullyFactoredCounterexample) {
  EXPECT_EQ(xn_factor_shape(7, 6).distinct(), 6u);
  EXPECT_EQ(factor_count_bound(7, 6), 4);
  EXPECT_GT(mpz_class(6), factor_count_bound(7, 6) + 1);
}
