#include "ffprog/fqpoly.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "ffprog/error.hpp"
#include "ffprog/intnt.hpp"

namespace ffprog {

std::vector<std::vector<std::uint64_t>> cyclotomic_cosets(std::uint64_t q, std::uint64_t m) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<bool> seen(m, false);
  const std::uint64_t qm = q % m;
  for (std::uint64_t i = 0; i < m; ++i) {
    if (seen[i]) continue;
    std::vector<std::uint64_t> coset;
    std::uint64_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      coset.push_back(j);
      j = mulmod(j, qm, m);
    }
    std::sort(coset.begin(), coset.end());
    out.push_back(std::move(coset));
  }
  return out;
}

namespace {

// n = n' p^e with gcd(n', p) = 1.
void split_char(unsigned n, std::uint64_t p, unsigned& n_prime, unsigned& p_power) {
  n_prime = n;
  p_power = 1;
  while (n_prime % p == 0) {
    n_prime /= static_cast<unsigned>(p);
    p_power *= static_cast<unsigned>(p);
  }
}

}  // namespace

XnShape xn_factor_shape(std::uint64_t q, unsigned n) {
  std::uint64_t p = 0;
  unsigned s = 0;
  if (!prime_power_decompose(q, p, s)) throw Error(ErrorKind::NotPrime, std::to_string(q) + " is not a prime power");
  if (n < 1) throw std::invalid_argument("xn_factor_shape: n must be positive");
  unsigned np = 0, pe = 0;
  split_char(n, p, np, pe);
  XnShape shape{q, n, {}};
  for (const auto& c : cyclotomic_cosets(q, np)) shape.factors.push_back({static_cast<unsigned>(c.size()), pe});
  std::stable_sort(shape.factors.begin(), shape.factors.end(),
                   [](const FactorShape& a, const FactorShape& b) { return a.degree < b.degree; });
  return shape;
}

XnShape XnFactorization::shape() const {
  XnShape s{q, n, {}};
  for (const auto& f : factors) s.factors.push_back({static_cast<unsigned>(f.poly.degree()), f.multiplicity});
  return s;
}

XnFactorization factor_xn_minus_1(const FieldCtx& ctx) { return factor_xn_minus_1(ctx, ctx.n()); }

XnFactorization factor_xn_minus_1(const FieldCtx& ctx, unsigned n) {
  const BaseField& F = ctx.base();
  unsigned np = 0, pe = 0;
  split_char(n, F.p(), np, pe);
  XnFactorization out;
  out.q = F.q();
  out.n = n;
  out.xn = xn_minus_one(F, n);

  const auto cosets = cyclotomic_cosets(F.q(), np);
  // Splitting field F_{q^d}, d = ord_{n'}(q), sharing the base modulus.
  unsigned d = 1;
  {
    std::uint64_t t = F.q() % np;
    while (np > 1 && t != 1) {
      t = mulmod(t, F.q() % np, np);
      ++d;
    }
  }
  FieldOptions opts;
  opts.search_cap = 0;
  opts.table_cap = 0;
  opts.factor_xn = false;
  opts.seed = ctx.seed();
  opts.base_modulus = F.modulus();
  opts.find_generator = false;
  const FieldRef split = make_field(F.p(), F.s(), d, opts);
  // A primitive n'-th root of unity: c^{(q^d - 1)/n'} for a seeded c, checked against the primes of n'.
  const mpz_class cofactor = (split->field_size() - 1) / np;
  const auto n_primes = factorize(static_cast<std::uint64_t>(np)).primes();
  FieldElem zeta = split->one();
  {
    std::mt19937_64 rng(ctx.seed() ^ (std::uint64_t(np) << 32) ^ F.q());
    std::uniform_int_distribution<std::uint64_t> dist(0, F.q() - 1);
    for (bool ok = np == 1; !ok;) {
      FieldElem c = split->zero();
      for (auto& x : c.coeffs) x = dist(rng);
      if (split->is_zero(c)) continue;
      zeta = split->pow(c, cofactor);
      ok = true;
      for (const mpz_class& l : n_primes)
        if (split->pow(zeta, mpz_class(np) / l) == split->one()) ok = false;
    }
  }

  for (const auto& coset : cosets) {
    // ∏ (x - ζ^j) over the coset, coefficients in F_{q^d}.
    std::vector<FieldElem> prod{split->one()};
    for (std::uint64_t j : coset) {
      const FieldElem root = split->pow(zeta, mpz_class(static_cast<unsigned long>(j)));
      std::vector<FieldElem> next(prod.size() + 1, split->zero());
      for (std::size_t i = 0; i < prod.size(); ++i) {
        next[i + 1] = split->add(next[i + 1], prod[i]);
        next[i] = split->sub(next[i], split->mul(prod[i], root));
      }
      prod = std::move(next);
    }
    std::vector<BaseField::Elem> coeffs;
    for (const FieldElem& c : prod) {
      if (!split->in_base(c)) throw std::logic_error("cyclotomic factor has coefficients outside F_q");
      coeffs.push_back(c.coeffs[0]);
    }
    out.factors.push_back({PolyFq(std::move(coeffs)), pe});
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const XnFactor& a, const XnFactor& b) { return a.poly < b.poly; });

  PolyFq check = PolyFq::constant(1);
  for (const auto& f : out.factors)
    for (unsigned k = 0; k < f.multiplicity; ++k) check = poly_mul(F, check, f.poly);
  if (check != out.xn) throw std::logic_error("factorization of x^n - 1 does not recompose");
  return out;
}

FieldElem module_action(const FieldCtx& ctx, const PolyFq& f, const FieldElem& a) {
  FieldElem acc = ctx.zero(), power = a;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (f.coeffs[i] != 0) acc = ctx.add(acc, ctx.scale(power, f.coeffs[i]));
    if (i + 1 < f.coeffs.size()) power = ctx.frobenius(power);
  }
  return acc;
}

PolyFq divisor_poly(const FieldCtx& ctx, const XnDivisor& d) {
  const XnFactorization& xn = ctx.xn();
  PolyFq out = PolyFq::constant(1);
  for (std::size_t i = 0; i < d.exps.size(); ++i)
    for (unsigned k = 0; k < d.exps[i]; ++k) out = poly_mul(ctx.base(), out, xn.factors[i].poly);
  return out;
}

unsigned divisor_degree(const XnFactorization& xn, const XnDivisor& d) {
  unsigned deg = 0;
  for (std::size_t i = 0; i < d.exps.size(); ++i) deg += d.exps[i] * xn.factors[i].poly.degree();
  return deg;
}

XnDivisor full_divisor(const XnFactorization& xn) {
  XnDivisor d;
  for (const auto& f : xn.factors) d.exps.push_back(f.multiplicity);
  return d;
}

XnDivisor unit_divisor(const XnFactorization& xn) { return XnDivisor{std::vector<unsigned>(xn.factors.size(), 0)}; }

XnDivisor complement(const XnFactorization& xn, const XnDivisor& d) {
  XnDivisor c = full_divisor(xn);
  for (std::size_t i = 0; i < c.exps.size(); ++i) c.exps[i] -= d.exps[i];
  return c;
}

XnDivisor fq_order_divisor(const FieldCtx& ctx, const FieldElem& a) {
  const XnFactorization& xn = ctx.xn();
  XnDivisor h = full_divisor(xn);
  for (std::size_t i = 0; i < h.exps.size(); ++i) {
    while (h.exps[i] > 0) {
      XnDivisor smaller = h;
      --smaller.exps[i];
      if (!ctx.is_zero(module_action(ctx, divisor_poly(ctx, smaller), a))) break;
      h = std::move(smaller);
    }
  }
  return h;
}

PolyFq fq_order(const FieldCtx& ctx, const FieldElem& a) { return divisor_poly(ctx, fq_order_divisor(ctx, a)); }

std::optional<XnDivisor> factor_over(const FieldCtx& ctx, const PolyFq& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "zero polynomial");
  const BaseField& F = ctx.base();
  const XnFactorization& xn = ctx.xn();
  PolyFq rest = poly_monic(F, f);
  XnDivisor d = unit_divisor(xn);
  for (std::size_t i = 0; i < xn.factors.size(); ++i) {
    while (rest.degree() > 0) {
      PolyFq quot, rem;
      poly_divmod(F, rest, xn.factors[i].poly, quot, rem);
      if (!rem.is_zero()) break;
      rest = std::move(quot);
      ++d.exps[i];
    }
    if (d.exps[i] > xn.factors[i].multiplicity) return std::nullopt;
  }
  if (rest.degree() != 0) return std::nullopt;
  return d;
}

mpz_class phi_q(std::uint64_t q, std::span<const FactorShape> factors) {
  const mpz_class Q(static_cast<unsigned long>(q));
  mpz_class phi = 1;
  for (const auto& f : factors) {
    if (f.multiplicity == 0) continue;
    const mpz_class qd = ipow(Q, f.degree);
    phi *= ipow(qd, f.multiplicity - 1) * (qd - 1);
  }
  return phi;
}

mpz_class phi_q(const XnFactorization& xn, const XnDivisor& d) {
  std::vector<FactorShape> shape;
  for (std::size_t i = 0; i < d.exps.size(); ++i)
    shape.push_back({static_cast<unsigned>(xn.factors[i].poly.degree()), d.exps[i]});
  return phi_q(xn.q, shape);
}

namespace {

XnDivisor require_divisor(const FieldCtx& ctx, const PolyFq& f) {
  auto d = factor_over(ctx, f);
  if (!d) throw Error(ErrorKind::NotADivisorPoly, "polynomial does not divide x^n - 1");
  return *d;
}

}  // namespace

mpz_class phi_q(const FieldCtx& ctx, const PolyFq& f) { return phi_q(ctx.xn(), require_divisor(ctx, f)); }

int mobius_q(const XnDivisor& d) {
  int count = 0;
  for (unsigned e : d.exps) {
    if (e >= 2) return 0;
    count += static_cast<int>(e);
  }
  return count % 2 == 0 ? 1 : -1;
}

int mobius_q(const FieldCtx& ctx, const PolyFq& f) { return mobius_q(require_divisor(ctx, f)); }

std::size_t distinct_factors(const XnDivisor& d) {
  return static_cast<std::size_t>(std::count_if(d.exps.begin(), d.exps.end(), [](unsigned e) { return e > 0; }));
}

mpz_class w_poly(const XnDivisor& d) {
  mpz_class w;
  mpz_ui_pow_ui(w.get_mpz_t(), 2, distinct_factors(d));
  return w;
}

mpz_class w_poly(const FieldCtx& ctx, const PolyFq& f) { return w_poly(require_divisor(ctx, f)); }

std::vector<XnDivisor> monic_divisors(const XnFactorization& xn) {
  std::vector<XnDivisor> out{unit_divisor(xn)};
  for (std::size_t i = 0; i < xn.factors.size(); ++i) {
    const std::size_t base = out.size();
    for (unsigned e = 1; e <= xn.factors[i].multiplicity; ++e) {
      for (std::size_t j = 0; j < base; ++j) {
        XnDivisor d = out[j];
        d.exps[i] = e;
        out.push_back(std::move(d));
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [&](const XnDivisor& a, const XnDivisor& b) {
    const unsigned da = divisor_degree(xn, a), db = divisor_degree(xn, b);
    if (da != db) return da < db;
    return a.exps < b.exps;
  });
  return out;
}

std::optional<XnDivisor> auto_k_divisor(const FieldCtx& ctx, unsigned k) {
  const XnFactorization& xn = ctx.xn();
  std::optional<XnDivisor> best;
  PolyFq best_poly;
  for (const XnDivisor& d : monic_divisors(xn)) {
    if (divisor_degree(xn, d) != k) continue;
    PolyFq f = divisor_poly(ctx, d);
    if (!best || f < best_poly) {
      best = d;
      best_poly = std::move(f);
    }
  }
  return best;
}

std::vector<FactorBoundCandidate> factor_count_candidates(std::uint64_t q, unsigned n) {
  if (n < 5) throw Error(ErrorKind::BadDegree, "factor-count bound needs n >= 5");
  const mpz_class Q(static_cast<unsigned long>(q));
  const mpq_class N(n);
  std::vector<FactorBoundCandidate> out;
  out.push_back({0, mpq_class(0), mpq_class(n - 2)});
  const mpq_class b2 = mpq_class(Q - 1, 2);
  const mpq_class b3 = mpq_class(Q * Q + 3 * Q - 4, 6);
  const mpq_class b4 = mpq_class(Q * Q * Q + 3 * Q * Q + 5 * Q - 9, 12);
  for (auto [a, b] : {std::pair<unsigned, mpq_class>{2, b2}, {3, b3}, {4, b4}}) {
    b.canonicalize();
    mpq_class v = N / a + b - 1;
    v.canonicalize();
    out.push_back({a, b, v});
  }
  return out;
}

mpz_class factor_count_bound(std::uint64_t q, unsigned n) {
  const auto cands = factor_count_candidates(q, n);
  mpq_class best = cands.front().value;
  for (const auto& c : cands)
    if (c.value < best) best = c.value;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), best.get_num_mpz_t(), best.get_den_mpz_t());
  return fl;
}

}  // namespace ffprog

namespace ffprog {

FieldElem LinearMap::apply(const BaseField& F, const FieldElem& a) const {
  FieldElem out{std::vector<BaseField::Elem>(n, 0)};
  for (unsigned j = 0; j < n; ++j) {
    const BaseField::Elem c = a.coeffs[j];
    if (c == 0) continue;
    for (unsigned i = 0; i < n; ++i) {
      const BaseField::Elem v = at(i, j);
      if (v != 0) out.coeffs[i] = F.add(out.coeffs[i], F.mul(v, c));
    }
  }
  return out;
}

bool LinearMap::kills(const BaseField& F, const FieldElem& a) const {
  for (unsigned i = 0; i < n; ++i) {
    BaseField::Elem acc = 0;
    for (unsigned j = 0; j < n; ++j)
      if (a.coeffs[j] != 0 && at(i, j) != 0) acc = F.add(acc, F.mul(at(i, j), a.coeffs[j]));
    if (acc != 0) return false;
  }
  return true;
}

LinearMap action_matrix(const FieldCtx& ctx, const PolyFq& f) {
  LinearMap L;
  L.n = ctx.n();
  L.m.assign(std::size_t(L.n) * L.n, 0);
  for (unsigned j = 0; j < L.n; ++j) {
    const FieldElem col = module_action(ctx, f, ctx.basis(j));
    for (unsigned i = 0; i < L.n; ++i) L.m[std::size_t(i) * L.n + j] = col.coeffs[i];
  }
  return L;
}

}  // namespace ffprog
