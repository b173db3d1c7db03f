#include "ffprog/classify.hpp"

#include <stdexcept>

#include "ffprog/error.hpp"

namespace ffprog {

namespace {

void require_divides(const mpz_class& d, const mpz_class& n, const char* what) {
  if (d <= 0 || n % d != 0) throw Error(ErrorKind::NotADivisor, std::string(what) + " does not divide " + n.get_str());
}

bool is_one(const FieldCtx& ctx, const FieldElem& a) { return a == ctx.one(); }

}  // namespace

bool is_r_primitive(const FieldCtx& ctx, const FieldElem& a, const mpz_class& r) {
  if (ctx.is_zero(a)) throw Error(ErrorKind::ZeroElement, "0 has no multiplicative order");
  const mpz_class& N = ctx.group_order().value;
  require_divides(r, N, "r");
  return ctx.mult_order(a) == N / r;
}

bool is_Rr_free(const FieldCtx& ctx, const FieldElem& a, const mpz_class& R, const mpz_class& r) {
  const mpz_class& N = ctx.group_order().value;
  require_divides(r, N, "r");
  const mpz_class M = N / r;
  require_divides(R, M, "R");
  if (ctx.is_zero(a)) throw Error(ErrorKind::ZeroElement, "0 is not in C_r");
  if (!is_one(ctx, ctx.pow(a, M))) return false;
  for (const mpz_class& l : factorize(R).primes())
    if (is_one(ctx, ctx.pow(a, M / l))) return false;
  return true;
}

std::vector<LinearMap> g_free_tests(const FieldCtx& ctx, const XnDivisor& g) {
  const XnFactorization& xn = ctx.xn();
  std::vector<LinearMap> tests;
  for (std::size_t i = 0; i < g.exps.size(); ++i) {
    if (g.exps[i] == 0) continue;
    XnDivisor co = full_divisor(xn);
    --co.exps[i];
    tests.push_back(action_matrix(ctx, divisor_poly(ctx, co)));
  }
  return tests;
}

bool passes(const BaseField& F, const std::vector<LinearMap>& tests, const FieldElem& a) {
  for (const LinearMap& t : tests)
    if (t.kills(F, a)) return false;
  return true;
}

bool is_g_free(const FieldCtx& ctx, const FieldElem& a, const XnDivisor& g) {
  const XnFactorization& xn = ctx.xn();
  for (std::size_t i = 0; i < g.exps.size(); ++i) {
    if (g.exps[i] == 0) continue;
    XnDivisor co = full_divisor(xn);
    --co.exps[i];
    if (ctx.is_zero(module_action(ctx, divisor_poly(ctx, co), a))) return false;
  }
  return true;
}

bool is_g_free(const FieldCtx& ctx, const FieldElem& a, const PolyFq& g) {
  auto d = factor_over(ctx, g);
  if (!d || !g.is_monic()) throw Error(ErrorKind::NotADivisorPoly, "g must be a monic divisor of x^n - 1");
  return is_g_free(ctx, a, *d);
}

namespace {

// Polynomials over F_{q^n}, low degree first, trimmed.
using ExtPoly = std::vector<FieldElem>;

void trim(const FieldCtx& ctx, ExtPoly& a) {
  while (!a.empty() && ctx.is_zero(a.back())) a.pop_back();
}

ExtPoly ext_mod(const FieldCtx& ctx, ExtPoly a, const ExtPoly& b) {
  const FieldElem lead_inv = ctx.inv(b.back());
  while (a.size() >= b.size()) {
    const FieldElem c = ctx.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ctx.sub(a[shift + i], ctx.mul(c, b[i]));
    trim(ctx, a);
  }
  return a;
}

}  // namespace

unsigned k_normality_gcd(const FieldCtx& ctx, const FieldElem& a) {
  const unsigned n = ctx.n();
  ExtPoly u(n, ctx.zero());
  FieldElem conj = a;
  for (unsigned i = 0; i < n; ++i) {
    u[n - 1 - i] = conj;
    conj = ctx.frobenius(conj);
  }
  trim(ctx, u);
  ExtPoly v(n + 1, ctx.zero());
  v[0] = ctx.neg(ctx.one());
  v[n] = ctx.one();
  if (u.empty()) return n;
  while (!u.empty()) {
    ExtPoly r = ext_mod(ctx, v, u);
    v = std::move(u);
    u = std::move(r);
  }
  return static_cast<unsigned>(v.size() - 1);
}

unsigned k_normality_order(const FieldCtx& ctx, const FieldElem& a) {
  return ctx.n() - divisor_degree(ctx.xn(), fq_order_divisor(ctx, a));
}

unsigned k_normality(const FieldCtx& ctx, const FieldElem& a) {
  const unsigned by_gcd = k_normality_gcd(ctx, a);
  const unsigned by_order = k_normality_order(ctx, a);
  if (by_gcd != by_order) throw std::logic_error("k-normality: gcd and F_q-order methods disagree");
  return by_order;
}

ElementProfile profile(const FieldCtx& ctx, const FieldElem& a) {
  ElementProfile p;
  if (!ctx.is_zero(a)) {
    p.order = ctx.mult_order(a);
    p.r_value = ctx.group_order().value / p.order;
  }
  p.fq_order = fq_order(ctx, a);
  p.k_value = k_normality(ctx, a);
  return p;
}

FieldElem construct_k_normal(const FieldCtx& ctx, const PolyFq& f, const FieldElem& beta) {
  if (!f.is_monic() || !factor_over(ctx, f)) throw Error(ErrorKind::NotADivisorPoly, "f must be a monic divisor of x^n - 1");
  if (k_normality_order(ctx, beta) != 0) throw Error(ErrorKind::NotNormal, "beta is not normal");
  FieldElem alpha = module_action(ctx, f, beta);
  if (k_normality(ctx, alpha) != static_cast<unsigned>(f.degree()))
    throw std::logic_error("construct_k_normal: result has the wrong k");
  return alpha;
}

FieldElem find_normal_element(const FieldCtx& ctx) {
  const auto tests = g_free_tests(ctx, full_divisor(ctx.xn()));
  const std::uint64_t size = ctx.size_u64();
  for (std::uint64_t i = 1; i < size; ++i) {
    FieldElem a = ctx.element_at(i);
    if (passes(ctx.base(), tests, a)) return a;
  }
  throw std::logic_error("no normal element found");
}

std::optional<PreimageSet> solve_action(const FieldCtx& ctx, const LinearMap& f, const FieldElem& target) {
  const BaseField& F = ctx.base();
  const unsigned n = f.n;
  // Augmented matrix [A | b], reduced row echelon form.
  std::vector<std::vector<BaseField::Elem>> rows(n, std::vector<BaseField::Elem>(n + 1));
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) rows[i][j] = f.at(i, j);
    rows[i][n] = target.coeffs[i];
  }
  std::vector<int> pivot_col;
  unsigned rank = 0;
  for (unsigned col = 0; col < n && rank < n; ++col) {
    unsigned piv = rank;
    while (piv < n && rows[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(rows[piv], rows[rank]);
    const BaseField::Elem inv = F.inv(rows[rank][col]);
    for (auto& v : rows[rank]) v = F.mul(v, inv);
    for (unsigned i = 0; i < n; ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      const BaseField::Elem c = rows[i][col];
      for (unsigned j = 0; j <= n; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(c, rows[rank][j]));
    }
    pivot_col.push_back(static_cast<int>(col));
    ++rank;
  }
  for (unsigned i = rank; i < n; ++i)
    if (rows[i][n] != 0) return std::nullopt;

  PreimageSet out;
  out.particular = ctx.zero();
  for (unsigned i = 0; i < rank; ++i) out.particular.coeffs[pivot_col[i]] = rows[i][n];
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  for (unsigned free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    FieldElem v = ctx.zero();
    v.coeffs[free] = 1;
    for (unsigned i = 0; i < rank; ++i) v.coeffs[pivot_col[i]] = F.neg(rows[i][free]);
    out.kernel.push_back(std::move(v));
  }
  return out;
}

std::optional<FieldElem> free_preimage(const FieldCtx& ctx, const LinearMap& f, const FieldElem& target,
                                       const std::vector<LinearMap>& g_tests) {
  const auto sol = solve_action(ctx, f, target);
  if (!sol) return std::nullopt;
  const BaseField& F = ctx.base();
  const std::size_t dim = sol->kernel.size();
  std::vector<BaseField::Elem> digits(dim, 0);
  while (true) {
    FieldElem g = sol->particular;
    for (std::size_t i = 0; i < dim; ++i)
      if (digits[i] != 0) g = ctx.add(g, ctx.scale(sol->kernel[i], digits[i]));
    if (passes(F, g_tests, g)) return g;
    std::size_t i = 0;
    while (i < dim && ++digits[i] == F.q()) digits[i++] = 0;
    if (i == dim) break;
  }
  return std::nullopt;
}

}  // namespace ffprog
