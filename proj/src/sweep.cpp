#include "ffprog/sweep.hpp"

#include <chrono>

#include "ffprog/bounds.hpp"
#include "ffprog/error.hpp"
#include "ffprog/intnt.hpp"

namespace ffprog {

const char* to_string(BetaPolicy policy) {
  switch (policy) {
    case BetaPolicy::One: return "one";
    case BetaPolicy::Fixed: return "fixed";
    case BetaPolicy::AllNonzero: return "all_nonzero";
  }
  return "?";
}

bool SweepTemplate::forces_admissibility() const {
  if (m != 3 || k != 2 || r.size() != 3) return false;
  for (const mpz_class& ri : r)
    if (ri != 2) return false;
  return true;
}

std::vector<SweepInstance> sweep_grid(std::uint64_t q_lo, std::uint64_t q_hi, unsigned n_lo, unsigned n_hi,
                                      bool odd_only) {
  std::vector<SweepInstance> out;
  for (std::uint64_t q = std::max<std::uint64_t>(q_lo, 2); q <= q_hi; ++q) {
    std::uint64_t p;
    unsigned s;
    if (!prime_power_decompose(q, p, s) || (odd_only && p == 2)) continue;
    for (unsigned n = n_lo; n <= n_hi; ++n) out.push_back({q, n});
  }
  return out;
}

PolyFq select_f(const FieldCtx& ctx, unsigned k, const std::optional<std::vector<std::uint64_t>>& coeffs) {
  if (!coeffs) {
    auto d = auto_k_divisor(ctx, k);
    if (!d) throw Error(ErrorKind::NotADivisorPoly, "x^n - 1 has no monic divisor of degree " + std::to_string(k));
    return divisor_poly(ctx, *d);
  }
  PolyFq f(*coeffs);
  if (f.degree() != static_cast<int>(k) || !f.is_monic() || !factor_over(ctx, f))
    throw Error(ErrorKind::NotADivisorPoly, "f = " + to_string(f) + " is not a monic degree-k divisor of x^n - 1");
  return f;
}

namespace {

std::string join(const std::vector<mpz_class>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s;
}

SweepRow run_row(const FieldRef& ctx, const FieldElem& beta, const SweepTemplate& tpl, const std::vector<mpz_class>& r,
                 const SearchOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepRow row;
  row.q = ctx->q();
  row.n = ctx->n();
  row.beta = ctx->format(beta);
  row.m = tpl.m;
  row.r = join(r);
  row.k = tpl.k;
  row.admissible = check_admissible(row.q, row.n);
  if (!row.admissible && (tpl.skip_inadmissible || tpl.forces_admissibility())) {
    row.status = "skipped";
    return row;
  }
  try {
    ProgressionSpec spec{ctx, tpl.m, beta, r, tpl.k, select_f(*ctx, tpl.k, tpl.f), tpl.mode, tpl.position};
    spec.validate();
    if (tpl.criterion) row.main_verdict = main_criterion(*ctx, tpl.m, r, spec.f).verdict;
    if (auto w = find_progression(spec, opts)) {
      row.witness_found = true;
      row.witness = ctx->format(w->alpha);
    }
    if (tpl.count) row.count = count_N(spec, full_R(spec), full_divisor(ctx->xn()), opts).count;
    row.status = "ok";
  } catch (const Error& e) {
    row.status = std::string("error: ") + e.what();
  }
  row.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

}  // namespace

std::vector<SweepRow> sweep(const std::vector<SweepInstance>& instances, const SweepTemplate& tpl,
                            const SearchOptions& opts) {
  std::vector<SweepRow> rows;
  std::vector<mpz_class> r = tpl.r.empty() ? std::vector<mpz_class>(tpl.m, 1) : tpl.r;
  for (const auto& inst : instances) {
    FieldRef ctx;
    try {
      FieldOptions fo;
      fo.seed = tpl.seed;
      ctx = make_field_q(inst.q, inst.n, fo);
    } catch (const Error& e) {
      SweepRow row;
      row.q = inst.q;
      row.n = inst.n;
      row.m = tpl.m;
      row.r = join(r);
      row.k = tpl.k;
      row.admissible = check_admissible(inst.q, inst.n);
      row.status = std::string("error: ") + e.what();
      rows.push_back(row);
      continue;
    }
    switch (tpl.beta_policy) {
      case BetaPolicy::One: rows.push_back(run_row(ctx, ctx->one(), tpl, r, opts)); break;
      case BetaPolicy::Fixed: {
        FieldElem beta;
        try {
          beta = ctx->parse(tpl.beta);
        } catch (const std::exception& e) {
          SweepRow row;
          row.q = inst.q;
          row.n = inst.n;
          row.beta = tpl.beta;
          row.status = std::string("error: ") + e.what();
          rows.push_back(row);
          break;
        }
        rows.push_back(run_row(ctx, beta, tpl, r, opts));
        break;
      }
      case BetaPolicy::AllNonzero:
        for (std::uint64_t i = 1; i < ctx->size_u64(); ++i) rows.push_back(run_row(ctx, ctx->element_at(i), tpl, r, opts));
        break;
    }
  }
  return rows;
}

}  // namespace ffprog
