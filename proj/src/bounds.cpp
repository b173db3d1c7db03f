#include "ffprog/bounds.hpp"

#include <numeric>

#include "ffprog/error.hpp"
#include "ffprog/fqpoly.hpp"
#include "real.hpp"

namespace ffprog {

namespace {

mpz_class Z(std::uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); }

mpz_class pow2(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

std::string join(const std::vector<mpz_class>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s;
}

std::string str(const mpq_class& x) { return x.get_str(); }

BoundValue integer_value(const mpz_class& z) { return {"integer", z.get_str()}; }

}  // namespace

bool squared_power_at_least(std::uint64_t q, long exponent, const mpq_class& rhs, BoundValue* lhs_out,
                            BoundValue* rhs_out) {
  const mpq_class rhs2 = rhs * rhs;
  const mpz_class qe = ipow(Z(q), static_cast<unsigned long>(exponent >= 0 ? exponent : -exponent));
  bool verdict;
  if (exponent >= 0) {
    verdict = qe * rhs2.get_den() >= rhs2.get_num();
    if (lhs_out) *lhs_out = integer_value(qe);
  } else {
    verdict = rhs2.get_den() >= rhs2.get_num() * qe;
    if (lhs_out) *lhs_out = {"rational", mpq_class(1, qe).get_str()};
  }
  if (rhs_out) *rhs_out = {rhs2.get_den() == 1 ? "integer" : "rational", rhs2.get_str()};
  return verdict;
}

BoundReport theorem_criterion(const CriterionTerms& t) {
  if (t.r.size() != t.m || t.omega.size() != t.m) throw Error(ErrorKind::InvalidSpec, "expected m values of r and W");
  mpz_class rhs = mpz_class(t.m) * pow2(t.w_gtilde);
  for (unsigned i = 0; i < t.m; ++i) rhs *= t.r[i] * pow2(t.omega[i]);
  BoundReport rep;
  rep.criterion = "theorem";
  rep.comparison = "q^(n-2k) >= (m W(g~) prod r_i W(R_i))^2";
  rep.verdict = squared_power_at_least(t.q, long(t.n) - 2 * long(t.k), mpq_class(rhs), &rep.lhs, &rep.rhs);
  rep.inputs = {{"q", std::to_string(t.q)}, {"n", std::to_string(t.n)},     {"m", std::to_string(t.m)},
                {"k", std::to_string(t.k)}, {"r", join(t.r)},               {"w_gtilde", std::to_string(t.w_gtilde)}};
  std::string om;
  for (std::size_t i = 0; i < t.omega.size(); ++i) om += (i ? "," : "") + std::to_string(t.omega[i]);
  rep.inputs.emplace_back("omega", om);
  rep.details.emplace_back("rhs", rhs.get_str());
  return rep;
}

namespace {

BoundReport main_from_order(const FactoredInt& order, std::uint64_t q, unsigned n, unsigned m, unsigned k,
                            const std::vector<mpz_class>& r, unsigned quotient_factors) {
  if (r.size() != m) throw Error(ErrorKind::InvalidSpec, "expected m values of r");
  CriterionTerms t{q, n, m, k, r, {}, quotient_factors};
  for (const mpz_class& ri : r) {
    if (ri <= 0 || order.value % ri != 0) throw Error(ErrorKind::NotADivisor, "r = " + ri.get_str() + " does not divide q^n - 1");
    t.omega.push_back(static_cast<unsigned>(order.quotient(ri).num_primes()));
  }
  BoundReport rep = theorem_criterion(t);
  rep.criterion = "main";
  rep.comparison = "q^(n-2k) >= (m W((x^n-1)/f) prod r_i W((q^n-1)/r_i))^2";
  return rep;
}

}  // namespace

BoundReport main_criterion(std::uint64_t q, unsigned n, unsigned m, unsigned k, const std::vector<mpz_class>& r,
                           unsigned quotient_factors) {
  return main_from_order(factorize(ipow(Z(q), n) - 1), q, n, m, k, r, quotient_factors);
}

BoundReport main_criterion(const FieldCtx& ctx, unsigned m, const std::vector<mpz_class>& r, const PolyFq& f) {
  auto fd = factor_over(ctx, f);
  if (!fd || !f.is_monic()) throw Error(ErrorKind::NotADivisorPoly, "f must be a monic divisor of x^n - 1");
  const unsigned w = static_cast<unsigned>(distinct_factors(complement(ctx.xn(), *fd)));
  const FactoredInt order = ctx.has_generator() ? ctx.group_order() : factorize(ctx.group_order().value);
  return main_from_order(order, ctx.q(), ctx.n(), m, static_cast<unsigned>(f.degree()), r, w);
}

std::size_t SievePlan::u_total() const {
  std::size_t u = 0;
  for (const auto& p : excluded_primes) u += p.size();
  return u;
}

SievePlan make_sieve_plan(std::uint64_t q, std::vector<mpz_class> ell, std::vector<std::vector<mpz_class>> primes,
                          std::vector<unsigned> h_degrees) {
  if (ell.size() != primes.size()) throw Error(ErrorKind::InvalidSpec, "one prime list per position");
  SievePlan plan;
  plan.ell = std::move(ell);
  plan.excluded_primes = std::move(primes);
  plan.excluded_poly_degrees = std::move(h_degrees);
  mpq_class delta = 1;
  for (const auto& ps : plan.excluded_primes)
    for (const mpz_class& p : ps) delta -= mpq_class(1, p);
  for (unsigned d : plan.excluded_poly_degrees) delta -= mpq_class(1, ipow(Z(q), d));
  delta.canonicalize();
  plan.delta = delta;
  if (delta <= 0) throw Error(ErrorKind::NonPositiveDelta, "delta = " + delta.get_str() + " <= 0");
  const long us = static_cast<long>(plan.u_total() + plan.excluded_poly_degrees.size()) - 1;
  plan.Delta = mpq_class(2) + mpq_class(us) / delta;
  plan.Delta.canonicalize();
  return plan;
}

SievePlan sieve_plan_from_R(std::uint64_t q, const std::vector<FactoredInt>& R, const std::vector<mpz_class>& ell,
                            std::vector<unsigned> h_degrees) {
  if (R.size() != ell.size()) throw Error(ErrorKind::InvalidSpec, "one l_i per R_i");
  std::vector<std::vector<mpz_class>> primes(R.size());
  for (std::size_t i = 0; i < R.size(); ++i) {
    if (ell[i] <= 0 || R[i].value % ell[i] != 0) throw Error(ErrorKind::NotADivisor, "l_i must divide R_i");
    for (const mpz_class& p : R[i].primes())
      if (ell[i] % p != 0) primes[i].push_back(p);
  }
  return make_sieve_plan(q, ell, std::move(primes), std::move(h_degrees));
}

BoundReport sieve_criterion(std::uint64_t q, unsigned n, unsigned m, unsigned k, const std::vector<mpz_class>& r,
                            const SievePlan& plan, unsigned w_gtilde) {
  if (plan.delta <= 0) throw Error(ErrorKind::NonPositiveDelta, "delta = " + plan.delta.get_str() + " <= 0");
  if (r.size() != m || plan.ell.size() != m) throw Error(ErrorKind::InvalidSpec, "expected m values of r and l");
  mpq_class rhs = mpq_class(m) * plan.Delta * mpq_class(pow2(w_gtilde));
  for (unsigned i = 0; i < m; ++i) rhs *= mpq_class(r[i] * count_squarefree_divisors(factorize(plan.ell[i])));
  rhs.canonicalize();
  BoundReport rep;
  rep.criterion = "sieve";
  rep.comparison = "q^(n-2k) >= (m Delta W(g~) prod r_i W(l_i))^2";
  rep.verdict = squared_power_at_least(q, long(n) - 2 * long(k), rhs, &rep.lhs, &rep.rhs);
  rep.inputs = {{"q", std::to_string(q)}, {"n", std::to_string(n)}, {"m", std::to_string(m)},
                {"k", std::to_string(k)}, {"r", join(r)},           {"w_gtilde", std::to_string(w_gtilde)},
                {"l", join(plan.ell)}};
  rep.details = {{"delta", str(plan.delta)},
                 {"Delta", str(plan.Delta)},
                 {"u", std::to_string(plan.u_total())},
                 {"s", std::to_string(plan.excluded_poly_degrees.size())},
                 {"rhs", str(rhs)}};
  return rep;
}

BoundReport w_upper_bound(const mpz_class& u, unsigned N, unsigned e, const std::optional<FactoredInt>& factored) {
  if (N == 0 || e == 0) throw Error(ErrorKind::HypothesisFailed, "N and e must be positive");
  const mpz_class P = primorial(e);
  const mpz_class bound = pow2(static_cast<unsigned long>(e) * N);
  if (u < P) throw Error(ErrorKind::HypothesisFailed, "u < P_e");
  if (P < bound) throw Error(ErrorKind::HypothesisFailed, "1/N < e log 2 / log P_e (P_e < 2^(eN))");
  BoundReport rep;
  rep.criterion = "w_upper_bound";
  rep.comparison = "P_e >= 2^(eN)";
  rep.lhs = integer_value(P);
  rep.rhs = integer_value(bound);
  rep.verdict = true;
  rep.inputs = {{"u", u.get_str()}, {"N", std::to_string(N)}, {"e", std::to_string(e)}};
  if (factored) {
    if (factored->value != u) throw std::invalid_argument("w_upper_bound: factorization does not match u");
    const mpz_class W = count_squarefree_divisors(*factored);
    const bool direct = ipow(W, N) <= u;
    rep.details = {{"W(u)", W.get_str()}, {"W(u)^N <= u", direct ? "true" : "false"}};
    rep.verdict = direct;
  }
  return rep;
}

std::optional<unsigned> minimal_primorial_index(unsigned N, unsigned limit) {
  mpz_class P = 1;
  for (unsigned e = 1; e <= limit; ++e) {
    P *= Z(nth_prime(e));
    if (P >= pow2(static_cast<unsigned long>(e) * N)) return e;
  }
  return std::nullopt;
}

BoundReport asymptotic_criterion(std::uint64_t q, unsigned n, unsigned m, unsigned k, const std::vector<mpz_class>& r,
                                 unsigned N, unsigned e) {
  if (r.size() != m || m == 0) throw Error(ErrorKind::InvalidSpec, "expected m values of r");
  if (N < 3 || ipow(Z(q), N - 2) <= pow2(2UL * N))
    throw Error(ErrorKind::HypothesisFailed, "1/2 - 1/N - log_q 2 <= 0");
  const mpz_class P = primorial(e);
  if (P < pow2(static_cast<unsigned long>(e) * N * m))
    throw Error(ErrorKind::HypothesisFailed, "1/(Nm) < e log 2 / log P_e");
  const mpz_class order = ipow(Z(q), n) - 1;
  mpz_class prod_r = 1;
  for (const mpz_class& ri : r) {
    if (ri <= 0 || order % ri != 0) throw Error(ErrorKind::NotADivisor, "r = " + ri.get_str() + " does not divide q^n - 1");
    if (order / ri < P) throw Error(ErrorKind::HypothesisFailed, "(q^n - 1)/r_i < P_e");
    prod_r *= ri;
  }
  // Raised to the power 2Nm: q^{(n-2k)Nm - 2nm} >= m^{2Nm} (Π r)^{2Nm-2} 2^{2(n-k)Nm}.
  const long Nm = long(N) * m;
  const long q_exp = (long(n) - 2 * long(k)) * Nm - 2 * long(n) * m;
  const long two_exp = 2 * (long(n) - long(k)) * Nm;
  const Real lq = log_of(Z(q)), l2 = boost::multiprecision::log(Real(2));
  const Real lm = boost::multiprecision::log(Real(m)), lr = log_of(prod_r);
  const Real diff = Real(q_exp) * lq - Real(2 * Nm) * lm - Real(2 * Nm - 2) * lr - Real(two_exp) * l2;
  const Real scale = boost::multiprecision::abs(Real(q_exp) * lq) + Real(2 * Nm) * lm + Real(2 * Nm - 2) * lr +
                     boost::multiprecision::abs(Real(two_exp) * l2) + 1;
  BoundReport rep;
  rep.criterion = "asymptotic";
  rep.comparison = "q^(n/2-k) >= m (prod r_i)^(1-1/(Nm)) 2^(n-k) q^(n/N)";
  rep.precision = "log-space, " + std::to_string(kRealDigits) + " digits, exact fallback";
  const Real lhs_log = (Real(long(n)) / 2 - Real(long(k))) * lq;
  const Real rhs_log = lm + (1 - Real(1) / Real(Nm)) * lr + Real(long(n) - long(k)) * l2 + Real(long(n)) / Real(long(N)) * lq;
  rep.lhs = {"log", lhs_log.str(60)};
  rep.rhs = {"log", rhs_log.str(60)};
  if (boost::multiprecision::abs(diff) > scale * Real("1e-150")) {
    rep.verdict = diff >= 0;
  } else {
    mpz_class lhs = 1, rhs = ipow(mpz_class(m), 2 * Nm) * ipow(prod_r, 2 * Nm - 2) * pow2(two_exp);
    (q_exp >= 0 ? lhs : rhs) *= ipow(Z(q), q_exp >= 0 ? q_exp : -q_exp);
    rep.verdict = lhs >= rhs;
    rep.details.emplace_back("exact_fallback", "true");
  }
  rep.inputs = {{"q", std::to_string(q)}, {"n", std::to_string(n)}, {"m", std::to_string(m)}, {"k", std::to_string(k)},
                {"r", join(r)},           {"N", std::to_string(N)}, {"e", std::to_string(e)}};
  rep.details.emplace_back("log_difference_raised", diff.str(40));
  return rep;
}

NumberPolFactorsResult number_pol_factors_detail(std::uint64_t q, unsigned n) {
  const XnShape shape = xn_factor_shape(q, n);
  NumberPolFactorsResult res;
  res.w_distinct = static_cast<unsigned>(shape.distinct());
  for (const auto& f : shape.factors) res.w_multiplicity += f.multiplicity;
  auto length = [&](unsigned w) -> std::optional<unsigned> {
    if (std::gcd(q, std::uint64_t(n)) > 1) return w;
    if (std::gcd(q - 1, std::uint64_t(n)) > 1) return w - 2;
    if (std::gcd(q + 1, std::uint64_t(n)) > 1) return w - 1;
    return std::nullopt;
  };
  if (std::gcd(q, std::uint64_t(n)) > 1) res.branch = "gcd(q,n)";
  else if (std::gcd(q - 1, std::uint64_t(n)) > 1) res.branch = "gcd(q-1,n)";
  else if (std::gcd(q + 1, std::uint64_t(n)) > 1) res.branch = "gcd(q+1,n)";
  else res.branch = "none";
  res.value = length(res.w_distinct);
  res.value_with_multiplicity = length(res.w_multiplicity);
  return res;
}

std::optional<unsigned> number_pol_factors(std::uint64_t q, unsigned n) { return number_pol_factors_detail(q, n).value; }

SumFactorsResult sum_factors(const mpz_class& T0, std::uint64_t p0) {
  mpz_class T = T0;
  std::uint64_t p = p0;
  SumFactorsResult res;
  res.S = 0;
  while (T >= Z(p) && p < 1000) {
    if (T % Z(p) == 0) {
      T /= Z(p);
      res.S += mpq_class(1, Z(p));
      ++res.u0;
      while (T % Z(p) == 0) T /= Z(p);
      p = next_prime(p);
    } else {
      p = next_prime(p);
    }
  }
  mpq_class Tq(T);
  while (mpq_class(Z(p)) < Tq) {
    Tq /= mpq_class(Z(p));
    res.S += mpq_class(1, Z(p));
    ++res.u0;
    p = next_prime(p);
  }
  res.S.canonicalize();
  Tq.canonicalize();
  res.T = Tq;
  return res;
}

SpecialSieveReport special_sieve_report(std::uint64_t q, unsigned n, std::uint64_t p0) {
  if (!is_prime(p0)) throw Error(ErrorKind::NotPrime, "p0 = " + std::to_string(p0) + " is not prime");
  SpecialSieveReport rep;
  rep.q = q;
  rep.n = n;
  rep.p0 = p0;
  rep.bound.criterion = "special_sieve";
  rep.bound.comparison = "q^(n-4) >= (3 Delta 2^(w1+3w2+3))^2";
  rep.bound.inputs = {{"q", std::to_string(q)}, {"n", std::to_string(n)}, {"p0", std::to_string(p0)}};
  if (q % 2 == 0) {
    rep.outcome = "q-even";
    return rep;
  }
  rep.w1 = number_pol_factors(q, n);
  if (!rep.w1) {
    rep.outcome = "no-w1";
    return rep;
  }
  mpz_class T = (ipow(Z(q), n) - 1) / 2;
  for (std::uint64_t p = 2; p < p0; p = next_prime(p)) {
    while (T % Z(p) == 0) {
      T /= Z(p);
      rep.ell *= Z(p);
    }
  }
  rep.T_rest = T;
  rep.w2 = static_cast<unsigned>(factorize(rep.ell).num_primes());
  rep.sums = sum_factors(T, p0);
  rep.delta = 1 - 3 * rep.sums.S;
  rep.delta.canonicalize();
  rep.bound.details = {{"w1", std::to_string(*rep.w1)}, {"w2", std::to_string(rep.w2)}, {"l", rep.ell.get_str()},
                       {"S", str(rep.sums.S)},          {"u0", std::to_string(rep.sums.u0)}, {"delta", str(rep.delta)}};
  if (rep.delta <= 0) {
    rep.outcome = "delta<=0";
    return rep;
  }
  rep.Delta = 2 + (mpq_class(3 * static_cast<long>(rep.sums.u0) - 1)) / rep.delta;
  rep.Delta.canonicalize();
  const mpq_class rhs = 3 * rep.Delta * mpq_class(pow2(*rep.w1 + 3 * rep.w2 + 3));
  rep.result = squared_power_at_least(q, long(n) - 4, rhs, &rep.bound.lhs, &rep.bound.rhs);
  rep.bound.verdict = rep.result;
  rep.bound.details.emplace_back("Delta", str(rep.Delta));
  rep.outcome = rep.result ? "true" : "false";
  return rep;
}

bool special_sieve(std::uint64_t q, unsigned n, std::uint64_t p0) { return special_sieve_report(q, n, p0).result; }

SpecialSieveReport special_sieve_scan(std::uint64_t q, unsigned n, std::uint64_t limit) {
  SpecialSieveReport last;
  for (std::uint64_t p0 = 2; p0 < limit; p0 = next_prime(p0)) {
    last = special_sieve_report(q, n, p0);
    if (last.result || last.outcome == "q-even" || last.outcome == "no-w1") return last;
  }
  return last;
}

SievePlan induced_sieve_plan(const SpecialSieveReport& rep) {
  const auto primes = factorize(rep.T_rest).primes();
  return make_sieve_plan(rep.q, {rep.ell, rep.ell, rep.ell}, {primes, primes, primes}, {});
}

}  // namespace ffprog
