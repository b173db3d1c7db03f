#include "ffprog/section4.hpp"

#include <algorithm>
#include <cmath>

#include "ffprog/error.hpp"
#include "ffprog/intnt.hpp"
#include "real.hpp"

namespace ffprog {

namespace bm = boost::multiprecision;

namespace {

Real R(long v) { return Real(v); }

std::string fix(const Real& x, int digits = 10) { return x.str(digits, std::ios_base::fixed); }

const Real& ln2() {
  static const Real v = bm::log(Real(2));
  return v;
}

Real q_max_initial() { return Real(412) * bm::pow(Real(10), Real(716)); }

mpz_class pow2(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

Real round_up(const Real& x, int digits) {
  const Real e = bm::floor(bm::log10(x)) - (digits - 1);
  const Real scale = bm::pow(Real(10), e);
  return bm::ceil(x / scale) * scale;
}

ReplicationStep step_minimal_e() {
  ReplicationStep s{"i", "e = 265 is the least e with 1/9 >= e log 2 / log P_e", false, {}};
  mpz_class P = 1;
  unsigned first = 0;
  for (unsigned e = 1; e <= 400 && !first; ++e) {
    P *= static_cast<unsigned long>(nth_prime(e));
    if (P >= pow2(9UL * e)) first = e;
  }
  s.ok = first == 265;
  s.values = {{"minimal_e", std::to_string(first)}};
  return s;
}

ReplicationStep step_two_primorial() {
  ReplicationStep s{"ii", "2 P_265 < 4.12e718", false, {}};
  const mpz_class two_p = 2 * primorial(265);
  mpz_class bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 10, 716);
  bound *= 412;
  s.ok = two_p < bound;
  s.values = {{"2P_265", sci(to_real(two_p), 10)}, {"digits", std::to_string(two_p.get_str().size())}};
  return s;
}

ReplicationStep step_y() {
  ReplicationStep s{"iii", "y(289, 307) >= 0.00095 > log(3 2^(2/3)) / log(4.12e718)", false, {}};
  const Real L = log_of(2 * primorial(265));
  const Real y = Real(1) / 6 - Real(2) / 289 - ln2() / bm::log(Real(307));
  const Real rhs = bm::log(Real(3) * bm::pow(Real(2), Real(2) / 3)) / bm::log(q_max_initial());
  const Real n_needed = L / bm::log(Real(307));
  const Real c("0.00095");
  s.ok = y >= c && c > rhs && n_needed < Real("288.94");
  s.values = {{"y", fix(y)}, {"rhs", fix(rhs)}, {"log(2P_e)/log307", fix(n_needed, 6)}};
  return s;
}

ReplicationStep step_z() {
  ReplicationStep s{"iv", "z(n) >= 0.00095 for all n >= 13 at q >= 79", false, {}};
  const Real L = log_of(2 * primorial(265));
  const Real l79 = bm::log(Real(79));
  const Real n0 = L / l79;
  Real zmin = 1;
  long argmin = 0;
  for (long n = 13; R(n) < n0; ++n) {
    const Real z = Real(1) / 6 - Real(2) / R(n) - R(n) * ln2() / L;
    if (z < zmin) zmin = z, argmin = n;
  }
  const Real z_second = Real(1) / 6 - Real(2) / n0 - ln2() / l79;
  const Real c("0.00095");
  s.ok = zmin >= c && z_second >= c && R(377) < n0;
  s.values = {{"log(2P_e)/log79", fix(n0, 6)},
              {"min_first_branch", fix(zmin)},
              {"argmin", std::to_string(argmin)},
              {"second_branch_at_boundary", fix(z_second)}};
  return s;
}

struct StageResult {
  Real threshold, threshold_3t3, Delta;
  unsigned t = 0;
  unsigned long u = 0;
};

StageResult run_stage(std::uint64_t p0, const Real& q_max) {
  const Real c = Real(1) / 2 - Real(2) / 13 - ln2() / bm::log(Real(79));
  const auto small = primes_below(p0);
  StageResult best;
  bool any = false;
  Real Pt = 1;
  for (unsigned t = 1; t <= small.size(); ++t) {
    Pt *= Real(small[t - 1]);
    if (t < 2) continue;
    Real prod = 2 * Pt, S = 0;
    unsigned long u = 0;
    for (std::uint64_t p = p0;; p = next_prime(p)) {
      if (prod * Real(p) > q_max) break;
      prod *= Real(p);
      S += Real(1) / Real(p);
      ++u;
    }
    const Real delta = 1 - 3 * S;
    if (delta <= 0) throw Error(ErrorKind::ReplicationMismatch, "step v: 1 - 3S <= 0 at p0 = " + std::to_string(p0));
    const Real Delta = 2 + (3 * Real(u) - 1) / delta;
    const Real th = bm::pow(3 * Delta * bm::pow(Real(2), Real(3 * t + 1)), 1 / c);
    const Real th3 = bm::pow(3 * Delta * bm::pow(Real(2), Real(3 * (t + 1))), 1 / c);
    if (!any || th > best.threshold) best.threshold = th, best.Delta = Delta, best.t = t, best.u = u;
    if (!any || th3 > best.threshold_3t3) best.threshold_3t3 = th3;
    any = true;
  }
  return best;
}

ReplicationStep step_chain(const std::vector<std::uint64_t>& p0s, std::vector<ChainStage>& chain) {
  ReplicationStep s{"v", "sieve thresholds 4.572e252 (p0 = 223) down to 1.101e97; 79^52 > 1.101e97", false, {}};
  Real q_max = q_max_initial();
  Real first, last;
  for (std::size_t i = 0; i < p0s.size(); ++i) {
    const StageResult r = run_stage(p0s[i], q_max);
    chain.push_back({p0s[i], sci(q_max, 8), sci(r.threshold, 8), sci(r.threshold_3t3, 8), r.t, r.u, fix(r.Delta, 6)});
    if (i == 0) first = r.threshold;
    last = r.threshold;
    q_max = r.threshold;
  }
  const Real p79 = bm::pow(Real(79), Real(52));
  const std::string first_r = sci(round_up(first, 4), 3), last_r = sci(round_up(last, 4), 3);
  s.ok = first_r == "4.572e+252" && last_r == "1.101e+97" && p79 > last && last <= Real("1.101e97");
  s.values = {{"first_threshold", sci(first, 8)},
              {"first_rounded", first_r},
              {"final_threshold", sci(last, 8)},
              {"final_rounded", last_r},
              {"79^52", sci(p79, 6)}};
  return s;
}

// 1/6 - 2/n - log 2/(a log q) >= log(3 2^(b+5/3)) / log(2 P_e) at the least admissible n.
bool cond_mod1(unsigned q, unsigned a, const Real& b, Real* margin, long* n_out) {
  const Real lq = bm::log(Real(q));
  const long n = std::max<long>(13, static_cast<long>(bm::ceil(bm::log(q_max_initial()) / lq)));
  const Real L = log_of(2 * primorial(265));
  const Real lhs = Real(1) / 6 - Real(2) / R(n) - ln2() / (R(a) * lq);
  const Real rhs = (bm::log(Real(3)) + (b + Real(5) / 3) * ln2()) / L;
  *margin = lhs - rhs;
  *n_out = n;
  return lhs >= rhs;
}

ReplicationStep step_small_q() {
  ReplicationStep s{"vi", "reduced condition holds for every odd prime power q < 79", true, {}};
  for (unsigned q = 3; q < 79; q += 2) {
    std::uint64_t p;
    unsigned e;
    if (!prime_power_decompose(q, p, e)) continue;
    Real margin;
    long n;
    bool ok;
    std::string pair;
    if (q > 7) {
      ok = cond_mod1(q, 2, Real(q - 1) / 2, &margin, &n);
      pair = "(2,(q-1)/2)";
      Real alt;
      long n2;
      const bool ok_alt = cond_mod1(q, 2, Real(q - 1), &alt, &n2);
      s.values.emplace_back("q=" + std::to_string(q) + " b=q-1", ok_alt ? "holds" : "fails");
    } else if (q >= 5) {
      ok = cond_mod1(q, 3, Real(q * q + 3 * q - 4) / 6, &margin, &n);
      pair = "(3,(q^2+3q-4)/6)";
    } else {
      ok = cond_mod1(q, 4, Real(q * q * q + 3 * q * q + 5 * q - 9) / 12, &margin, &n);
      pair = "(4,(q^3+3q^2+5q-9)/12)";
    }
    s.ok = s.ok && ok;
    s.values.emplace_back("q=" + std::to_string(q) + " " + pair + " n=" + std::to_string(n), fix(margin, 6));
  }
  return s;
}

}  // namespace

bool Section4Report::ok() const {
  return std::all_of(steps.begin(), steps.end(), [](const ReplicationStep& s) { return s.ok; });
}

std::string round_up_sig(const std::string& x, int digits) { return sci(round_up(Real(x), digits), digits - 1); }

Section4Report replicate_section4(const Section4Config& config) {
  Section4Report rep;
  rep.steps.push_back(step_minimal_e());
  rep.steps.push_back(step_two_primorial());
  rep.steps.push_back(step_y());
  rep.steps.push_back(step_z());
  rep.steps.push_back(step_chain(config.p0_chain, rep.chain));
  rep.steps.push_back(step_small_q());
  if (config.throw_on_mismatch)
    for (const auto& s : rep.steps)
      if (!s.ok) throw Error(ErrorKind::ReplicationMismatch, "step " + s.id + " diverges: " + s.claim);
  return rep;
}

}  // namespace ffprog
