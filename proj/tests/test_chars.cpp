#include <gtest/gtest.h>

#include <map>

#include "ffprog/chars.hpp"
#include "ffprog/classify.hpp"
#include "ffprog/error.hpp"
#include "support.hpp"

using namespace ffprog;
using namespace ffprog::testing;

namespace {

constexpr double kTol = 1e-6;

// Minimal annihilator of ψ_c among divisors (degree order), checked on every element.
std::vector<unsigned> naive_char_order(const CharacterTables& t, std::uint64_t c) {
  const FieldCtx& F = t.ctx();
  for (const auto& d : monic_divisors(F.xn())) {
    const PolyFq h = divisor_poly(F, d);
    bool trivial = true;
    for (std::uint64_t a = 0; a < t.size() && trivial; ++a)
      trivial = std::abs(t.add_char(c, F.index_of(module_action(F, h, F.element_at(a)))) - Complex(1)) < 1e-9;
    if (trivial) return d.exps;
  }
  return {};
}

}  // namespace

TEST(AddCharOrder, Examples) {
  auto F = f9();
  EXPECT_EQ(add_char_fq_order(*F, F->zero()), PolyFq::constant(1));
  const PolyFq h = add_char_fq_order(*F, F->one());
  EXPECT_NE(h, PolyFq::constant(1));
  EXPECT_TRUE(poly_divides(F->base(), h, PolyFq({2, 0, 1})));
}

TEST(AddCharOrder, MatchesBruteForceAndCountsPhiQ) {
  for (auto [q, n] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 2}, {9, 1}, {2, 4}, {4, 2}, {3, 3}, {5, 2}, {2, 6}}) {
    auto F = make_field_q(q, n);
    CharacterTables t(F);
    std::map<std::vector<unsigned>, unsigned long> hist;
    for (std::uint64_t c = 0; c < t.size(); ++c) {
      const auto ord = add_char_fq_order_divisor(*F, F->element_at(c)).exps;
      ASSERT_EQ(ord, naive_char_order(t, c)) << q << "^" << n << " c=" << c;
      ASSERT_EQ(t.poly_divisors()[t.add_order_of(c)].exps, ord);
      ++hist[ord];
    }
    for (const auto& d : monic_divisors(F->xn())) EXPECT_EQ(phi_q(F->xn(), d), hist[d.exps]);
  }
}

TEST(Tables, CapAndPreconditions) {
  try {
    CharacterTables t(make_field(3, 1, 8));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
  }
  CharacterTables ok(make_field(3, 1, 8), 7000);
  EXPECT_EQ(ok.size(), 6561u);
}

TEST(Orthogonality, MultiplicativeAndAdditive) {
  for (auto [q, n] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 2}, {7, 2}, {2, 5}, {5, 3}}) {
    CharacterTables t(make_field_q(q, n));
    for (std::uint64_t e = 0; e < t.group_size(); ++e) {
      Complex s = 0;
      for (std::uint64_t a = 1; a < t.size(); ++a) s += t.mult_char(e, a);
      EXPECT_LT(std::abs(s / double(t.group_size()) - Complex(e == 0 ? 1 : 0)), 1e-9);
    }
    for (std::uint64_t c = 0; c < t.size(); ++c) {
      Complex s = 0;
      for (std::uint64_t a = 0; a < t.size(); ++a) s += t.add_char(c, a);
      EXPECT_LT(std::abs(s / double(t.size()) - Complex(c == 0 ? 1 : 0)), 1e-9);
    }
  }
}

TEST(OmegaG, Examples) {
  auto F = f9();
  CharacterTables t(F);
  for (std::uint64_t a = 0; a < 9; ++a) EXPECT_LT(std::abs(omega_g(t, F->element_at(a), PolyFq::constant(1)) - 1.0), 1e-9);
  EXPECT_LT(std::abs(omega_g(t, elem({1, 1}), PolyFq({2, 0, 1})) - 1.0), 1e-9);
  EXPECT_LT(std::abs(omega_g(t, elem({0, 1}), PolyFq({2, 0, 1}))), 1e-9);
}

TEST(IndicatorRr, Examples) {
  auto F = f9();
  CharacterTables t(F);
  for (std::uint64_t a = 1; a < 9; ++a) EXPECT_LT(std::abs(indicator_Rr(t, F->element_at(a), 1, 1) - 1.0), 1e-9);
  EXPECT_LT(std::abs(indicator_Rr(t, elem({0, 1}), 4, 2) - 1.0), 1e-9);
  EXPECT_LT(std::abs(indicator_Rr(t, F->generator(), 4, 2)), 1e-9);
  EXPECT_THROW(indicator_Rr(t, F->one(), 8, 2), Error);
}

TEST(I0, Examples) {
  auto F = make_field(5, 1, 2);
  CharacterTables t(F);
  EXPECT_LT(std::abs(i0(t, F->zero()) - 1.0), 1e-9);
  for (std::uint64_t a = 1; a < t.size(); ++a) EXPECT_LT(std::abs(i0(t, F->element_at(a))), 1e-9);
}

TEST(CharacteristicFunctions, MatchDirectTests) {
  for (auto [q, n] : small_fields(729)) {
    auto F = make_field_q(q, n);
    CharacterTables t(F);
    const auto& divs = t.poly_divisors();
    const auto& idivs = t.int_divisors();
    for (std::uint64_t k = 0; k < t.size(); ++k) {
      const FieldElem a = F->element_at(k);
      const auto add = t.additive_sums(k);
      for (const auto& g : divs) ASSERT_LT(std::abs(omega_g(t, add, g) - double(is_g_free(*F, a, g))), kTol) << q << "^" << n;
      if (k == 0) continue;
      const auto mul = t.multiplicative_sums(k);
      for (std::uint64_t r : idivs)
        for (std::uint64_t R : idivs) {
          if ((t.group_size() / r) % R) continue;
          ASSERT_LT(std::abs(indicator_Rr(t, mul, R, r) - double(is_Rr_free(*F, a, R, r))), kTol)
              << q << "^" << n << " R=" << R << " r=" << r;
        }
    }
  }
}

TEST(Weil, F9Bounds) {
  auto F = f9();
  CharacterTables t(F);
  const WeilReport w = check_weil_bounds(t, 2);
  EXPECT_TRUE(w.ok());
  EXPECT_LE(w.case_a_max, 6 + kTol);
  EXPECT_DOUBLE_EQ(w.case_a_bound, 6.0);
  EXPECT_EQ(w.case_a_sums, 8u * 8u);
  EXPECT_THROW(check_weil_bounds(t, 3), Error);
}

TEST(Weil, PreimageSizesAreZeroOrQk) {
  auto F = f9();
  const PolyFq f({2, 1});
  std::map<std::uint64_t, unsigned> sizes;
  for (std::uint64_t g = 0; g < 9; ++g) ++sizes[F->index_of(module_action(*F, f, F->element_at(g)))];
  for (std::uint64_t t = 0; t < 9; ++t) EXPECT_TRUE(sizes[t] == 0 || sizes[t] == 3);
}

TEST(Weil, SeveralFields) {
  for (auto [q, n] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 3}, {5, 2}, {2, 6}, {7, 2}, {4, 3}}) {
    CharacterTables t(make_field_q(q, n));
    for (std::uint64_t r : t.int_divisors()) {
      if (r > 8) break;
      EXPECT_TRUE(check_weil_bounds(t, r).ok()) << q << "^" << n << " r=" << r;
    }
  }
}
