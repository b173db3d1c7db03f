#pragma once

// Grid drivers over (q, n): one row per instance and β, in a fixed order.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ffprog/search.hpp"

namespace ffprog {

enum class BetaPolicy { One, Fixed, AllNonzero };

const char* to_string(BetaPolicy policy);

struct SweepTemplate {
  unsigned m = 1;
  std::vector<mpz_class> r;  // empty means r_i = 1
  unsigned k = 0;
  std::optional<std::vector<std::uint64_t>> f;  // coefficients low to high; empty selects auto-k
  TargetMode mode = TargetMode::AnyPosition;
  unsigned position = 1;
  BetaPolicy beta_policy = BetaPolicy::One;
  std::string beta = "1";  // used with BetaPolicy::Fixed
  bool count = false;      // also compute N with R_i = (q^n - 1)/r_i, g = x^n - 1
  bool criterion = true;   // main criterion verdict
  /// Mark rows with check_admissible false as skipped; forced for m = 3, k = 2, r = (2,2,2).
  bool skip_inadmissible = false;
  std::uint64_t seed = 0;

  bool forces_admissibility() const;
};

struct SweepRow {
  std::uint64_t q = 0;
  unsigned n = 0;
  std::string beta;
  unsigned m = 0;
  std::string r;
  unsigned k = 0;
  bool admissible = false;
  std::string status;  // "ok", "skipped" or "error: ..."
  std::optional<bool> main_verdict;
  std::optional<std::uint64_t> count;
  bool witness_found = false;
  std::string witness;  // α as "c0,c1,..." (position v) when found
  double elapsed_ms = 0;
};

struct SweepInstance {
  std::uint64_t q;
  unsigned n;
};

/// Prime powers q in [lo, hi], optionally odd only, crossed with n in [n_lo, n_hi].
std::vector<SweepInstance> sweep_grid(std::uint64_t q_lo, std::uint64_t q_hi, unsigned n_lo, unsigned n_hi,
                                      bool odd_only);

std::vector<SweepRow> sweep(const std::vector<SweepInstance>& instances, const SweepTemplate& tpl,
                            const SearchOptions& opts = {});

/// f selected by auto-k or the given coefficients; throws NotADivisorPoly.
PolyFq select_f(const FieldCtx& ctx, unsigned k, const std::optional<std::vector<std::uint64_t>>& coeffs);

}  // namespace ffprog
