// One PASS/FAIL line per acceptance criterion, with wall time and budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ffprog/bounds.hpp"
#include "ffprog/chars.hpp"
#include "ffprog/classify.hpp"
#include "ffprog/cli.hpp"
#include "ffprog/error.hpp"
#include "ffprog/search.hpp"
#include "ffprog/section4.hpp"
#include "support.hpp"

using namespace ffprog;
using namespace ffprog::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;
};

#define CHECK(cond, msg)                      \
  do {                                        \
    if (!(cond)) {                            \
      std::ostringstream os_;                 \
      os_ << msg;                             \
      return Outcome{false, os_.str()};       \
    }                                         \
  } while (0)

mpz_class Z(std::uint64_t v) { return mpz_class(static_cast<unsigned long>(v)); }

// Square-free divisors by trial division.
unsigned long naive_W(unsigned long n) {
  unsigned long w = 1;
  for (unsigned long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      w *= 2;
      while (n % p == 0) n /= p;
    }
  return n > 1 ? 2 * w : w;
}

Outcome c1_divisor_sum() {
  for (unsigned long R = 1; R <= 300; ++R)
    for (unsigned long r = 1; r <= 30; ++r) {
      const unsigned long g = std::gcd(R, r);
      CHECK(lemma_sum(Z(R), Z(r)) == mpq_class(Z(g * naive_W(R / g))), "R=" << R << " r=" << r);
    }
  return {true, "9000 pairs"};
}

Outcome c2_char_functions() {
  const std::vector<std::pair<std::uint64_t, unsigned>> fields{{3, 2}, {9, 1},  {2, 4}, {4, 2}, {16, 1}, {5, 2},
                                                               {25, 1}, {3, 3}, {27, 1}, {7, 2}, {49, 1}, {2, 6},
                                                               {4, 3}, {8, 2},  {64, 1}, {3, 4}, {9, 2}, {81, 1}};
  constexpr double tol = 1e-6;
  std::uint64_t checks = 0;
  for (auto [q, n] : fields) {
    auto F = make_field_q(q, n);
    CharacterTables t(F);
    for (std::uint64_t i = 0; i < t.size(); ++i) {
      const FieldElem a = F->element_at(i);
      const auto add = t.additive_sums(i);
      for (const auto& g : t.poly_divisors()) {
        CHECK(std::abs(omega_g(t, add, g) - double(is_g_free(*F, a, g))) < tol, q << "^" << n << " omega");
        ++checks;
      }
      if (i == 0) continue;
      const auto mul = t.multiplicative_sums(i);
      for (std::uint64_t r : t.int_divisors())
        for (std::uint64_t R : t.int_divisors()) {
          if ((t.group_size() / r) % R) continue;
          CHECK(std::abs(indicator_Rr(t, mul, R, r) - double(is_Rr_free(*F, a, Z(R), Z(r)))) < tol,
                q << "^" << n << " R=" << R << " r=" << r);
          ++checks;
        }
    }
  }
  return {true, std::to_string(fields.size()) + " splittings, " + std::to_string(checks) + " comparisons"};
}

Outcome c3_counts() {
  unsigned fields = 0;
  for (auto [q, n] : small_fields(2000)) {
    auto F = make_field_q(q, n);
    const std::uint64_t size = F->size_u64(), N = size - 1;
    std::map<std::uint64_t, std::uint64_t> by_r;
    std::map<std::vector<unsigned>, std::uint64_t> by_h;
    std::vector<std::uint64_t> by_k(n + 1, 0);
    for (std::uint64_t i = 0; i < size; ++i) {
      const FieldElem a = F->element_at(i);
      if (i != 0) ++by_r[N / F->mult_order(a).get_ui()];
      ++by_h[fq_order_divisor(*F, a).exps];
      ++by_k[k_normality(*F, a)];
    }
    for (const mpz_class& r : divisors(F->group_order()))
      CHECK(mpz_class(Z(by_r[r.get_ui()])) == euler_phi(F->group_order().quotient(r)), q << "^" << n << " r=" << r);
    for (const auto& h : monic_divisors(F->xn()))
      CHECK(mpz_class(Z(by_h[h.exps])) == phi_q(F->xn(), h), q << "^" << n << " Phi_q");
    CHECK(std::accumulate(by_k.begin(), by_k.end(), std::uint64_t(0)) == size, q << "^" << n << " k-normal sum");
    ++fields;
  }
  return {true, std::to_string(fields) + " fields"};
}

bool has_run(std::uint64_t q, unsigned m) {
  auto F = make_field_q(q, 1);
  ProgressionSpec s;
  s.ctx = F;
  s.m = m;
  s.beta = F->one();
  s.r.assign(m, 1);
  s.k = 0;
  s.f = PolyFq::constant(1);
  s.mode = TargetMode::NoNormality;
  auto w = find_progression(s);
  return w && validate_witness(s, *w);
}

Outcome c4_runs() {
  CHECK(!has_run(7, 2), "F_7 has a primitive pair");
  unsigned pairs = 0, triples = 0;
  std::uint64_t p;
  unsigned e;
  for (std::uint64_t q = 9; q <= 200; q += 2)
    if (prime_power_decompose(q, p, e)) {
      CHECK(has_run(q, 2), "no pair in F_" << q);
      ++pairs;
    }
  for (std::uint64_t q = 171; q <= 400; q += 2)
    if (prime_power_decompose(q, p, e)) {
      CHECK(has_run(q, 3), "no triple in F_" << q);
      ++triples;
    }
  unsigned quads = 0;
  for (std::uint64_t q = 2402; quads < 5; ++q)
    if (prime_power_decompose(q, p, e) && p >= 5) {
      CHECK(has_run(q, 4), "no run of four in F_" << q);
      ++quads;
    }
  return {true, std::to_string(pairs) + " pair fields, " + std::to_string(triples) + " triple fields, 5 quadruple fields"};
}

Outcome c5_procedures() {
  CHECK(number_pol_factors(3, 4) == 1u, "number_pol_factors(3,4)");
  CHECK(number_pol_factors(3, 3) == 1u, "number_pol_factors(3,3)");
  CHECK(!number_pol_factors(3, 7).has_value(), "number_pol_factors(3,7)");
  const auto a = sum_factors(45, 2);
  CHECK(a.S == mpq_class(8, 15) && a.u0 == 2, "sum_factors(45,2)");
  const auto b = sum_factors(7, 11);
  CHECK(b.S == 0 && b.u0 == 0, "sum_factors(7,11)");
  unsigned admissible = 0;
  std::string skipped;
  for (unsigned n = 13; n <= 51; ++n) {
    const SpecialSieveReport r = special_sieve_scan(79, n, 1000);
    if (!check_admissible(79, n)) {
      // NumberPolFactors has no branch here, so the procedure cannot return true.
      CHECK(r.outcome == "no-w1", "n=" << n << " outcome " << r.outcome);
      skipped += (skipped.empty() ? "" : ",") + std::to_string(n);
      continue;
    }
    CHECK(r.result, "special_sieve(79," << n << ", p0) false for every p0 < 1000");
    ++admissible;
  }
  return {true, std::to_string(admissible) + " admissible n true; n in {" + skipped + "} have no w1"};
}

Outcome c6_section4() {
  const Section4Report r = replicate_section4();
  CHECK(r.ok(), "replication step failed");
  CHECK(minimal_primorial_index(9) == 265u, "minimal e");
  mpz_class bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 10, 716);
  bound *= 412;
  CHECK(2 * primorial(265) < bound, "2 P_265");
  CHECK(round_up_sig(r.chain.front().threshold, 4) == "4.572e+252", "first threshold " << r.chain.front().threshold);
  CHECK(round_up_sig(r.chain.back().threshold, 4) == "1.101e+97", "final threshold " << r.chain.back().threshold);
  mpz_class t97;
  mpz_ui_pow_ui(t97.get_mpz_t(), 10, 94);
  t97 *= 1101;
  CHECK(ipow(Z(79), 52) > t97, "79^52");
  return {true, "chain " + r.chain.front().threshold + " -> " + r.chain.back().threshold};
}

ProgressionSpec spec_for(FieldRef F, unsigned m, unsigned long r, const XnDivisor& f) {
  ProgressionSpec s;
  s.ctx = F;
  s.m = m;
  s.beta = F->one();
  s.r.assign(m, Z(r));
  s.f = divisor_poly(*F, f);
  s.k = divisor_degree(F->xn(), f);
  s.mode = TargetMode::AnyPosition;
  return s;
}

Outcome c7_soundness() {
  std::map<std::string, unsigned> trues;
  unsigned instances = 0;
  for (auto [q, n] : small_fields(3000, 2)) {
    if (!check_admissible(q, n)) continue;
    auto F = make_field_q(q, n);
    ++instances;
    struct Case {
      unsigned m;
      unsigned long r;
      unsigned k;
      std::string name;
    };
    for (const Case& c : {Case{3, 2, 2, "3,2,2"}, Case{1, 1, 0, "1,1,0"}}) {
      const auto d = auto_k_divisor(*F, c.k);
      if (!d) continue;
      const ProgressionSpec s = spec_for(F, c.m, c.r, *d);
      const unsigned wg = static_cast<unsigned>(distinct_factors(complement(F->xn(), *d)));
      std::vector<std::pair<std::string, bool>> verdicts;
      verdicts.emplace_back("main", main_criterion(*F, c.m, s.r, s.f).verdict);
      // Sieve over the primes of R_i beyond the smallest one.
      const FactoredInt R = F->group_order().quotient(Z(c.r));
      if (R.num_primes() > 1) {
        const mpz_class ell = R.primes().front();
        try {
          const SievePlan plan = sieve_plan_from_R(q, std::vector<FactoredInt>(c.m, R), std::vector<mpz_class>(c.m, ell), {});
          verdicts.emplace_back("sieve", sieve_criterion(q, n, c.m, c.k, s.r, plan, wg).verdict);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::NonPositiveDelta) throw;
        }
      }
      if (c.m == 3) verdicts.emplace_back("special_sieve", special_sieve_scan(q, n, 1000).result);
      for (const auto& [name, v] : verdicts) {
        if (!v) continue;
        ++trues[c.name + " " + name];
        const auto w = find_progression(s);
        CHECK(w.has_value(), name << " true but no witness at " << q << "^" << n << " (m,r,k)=(" << c.name << ")");
        CHECK(validate_witness(s, *w), "witness fails classify at " << q << "^" << n);
      }
    }
  }
  std::string note = std::to_string(instances) + " admissible fields; true verdicts:";
  for (const char* key : {"3,2,2 main", "3,2,2 sieve", "3,2,2 special_sieve", "1,1,0 main", "1,1,0 sieve"})
    note += std::string(" ") + key + "=" + std::to_string(trues[key]);
  return {true, note};
}

Outcome c8_inequality() {
  unsigned specs = 0;
  for (auto [q, n] : small_fields(625)) {
    auto F = make_field_q(q, n);
    for (unsigned k = 0; k <= 2; ++k) {
      const auto d = auto_k_divisor(*F, k);
      if (!d) continue;
      for (unsigned m = 1; m <= std::min<std::uint64_t>(3, F->p()); ++m) {
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
          if (mask && q % 2 == 0) break;
          ProgressionSpec s = spec_for(F, m, 1, *d);
          for (unsigned i = 0; i < m; ++i) s.r[i] = (mask >> i) & 1 ? 2 : 1;
          const auto R = full_R(s);
          const XnDivisor g = full_divisor(F->xn());
          mpz_class sum = 0;
          for (unsigned v = 1; v <= m; ++v) sum += Z(count_Nv(s, v, R, g).count);
          const std::uint64_t N = count_N(s, R, g).count;
          CHECK(mpz_class(m) * Z(N) >= sum, q << "^" << n << " m=" << m << " k=" << k << " mask=" << mask);
          ++specs;
        }
      }
    }
  }
  return {true, std::to_string(specs) + " specs"};
}

Outcome c9_weil() {
  unsigned pairs = 0;
  double worst = 0;
  for (auto [q, n] : small_fields(343)) {
    CharacterTables t(make_field_q(q, n));
    for (std::uint64_t r : t.int_divisors()) {
      const WeilReport w = check_weil_bounds(t, r);
      CHECK(w.case_a_ok, q << "^" << n << " r=" << r << " case a " << w.case_a_max << " > " << w.case_a_bound);
      CHECK(w.case_b_ok, q << "^" << n << " r=" << r << " case b");
      worst = std::max(worst, w.case_a_bound > 0 ? w.case_a_max / w.case_a_bound : 0);
      ++pairs;
    }
  }
  std::ostringstream os;
  os << pairs << " (field, r) pairs, max |sum|/bound " << worst;
  return {true, os.str()};
}

Outcome c10_determinism() {
  std::string first;
  for (const char* w : {"1", "4", "16"}) {
    std::ostringstream out, err;
    const int code = cli::run({"ffprog", "sweep", "--q-min", "3", "--q-max", "49", "--n-min", "1", "--n-max", "3",
                               "--m", "2", "--count", "--seed", "11", "--workers", w},
                              out, err);
    CHECK(code != cli::kUsage, "sweep failed: " << err.str());
    if (first.empty()) first = out.str();
    CHECK(out.str() == first, "workers " << w << " differ");
  }
  return {true, std::to_string(first.size()) + " bytes, identical for 1/4/16 workers"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "divisor-sum identity", 10, c1_divisor_sum},
      {2, "characteristic functions", 120, c2_char_functions},
      {3, "counting identities", 60, c3_counts},
      {4, "consecutive primitive runs", 120, c4_runs},
      {5, "ported procedures", 60, c5_procedures},
      {6, "large-q constants", 30, c6_section4},
      {7, "soundness bridge", 300, c7_soundness},
      {8, "pair-count inequality", 300, c8_inequality},
      {9, "Weil spot checks", 120, c9_weil},
      {10, "sweep determinism", 120, c10_determinism},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = s <= c.budget_s;
    const bool pass = o.pass && in_budget;
    if (!in_budget) o.note += " (over budget)";
    failed += !pass;
    std::printf("%s C%d %s: %s [%.2fs / %.0fs]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.note.c_str(), s, c.budget_s);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
