#pragma once

// Brute-force counts of N_v and N, first-witness search for arithmetic
// progressions α, α + β, ..., α + (m-1)β of r_i-primitive elements with a
// k-normal member α + (v-1)β = f ∘ γ, and the (q, n) admissibility filter.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ffprog/ffcore.hpp"
#include "ffprog/fqpoly.hpp"

namespace ffprog {

enum class TargetMode { AtPosition, AnyPosition, NoNormality };

const char* to_string(TargetMode mode);

struct ProgressionSpec {
  FieldRef ctx;
  unsigned m = 1;
  FieldElem beta;
  std::vector<mpz_class> r;  // r_1..r_m, each dividing q^n - 1
  unsigned k = 0;
  PolyFq f;                  // monic, degree k, f | x^n - 1
  TargetMode mode = TargetMode::AnyPosition;
  unsigned position = 1;     // 1-based, only for AtPosition

  /// Throws InvalidSpec, NotADivisor, NotADivisorPoly, BadDegree, BadPosition.
  void validate() const;
};

struct SearchOptions {
  unsigned workers = 1;
  std::uint64_t count_cap = 2'000'000;
  std::uint64_t search_cap = 100'000'000;
  std::size_t max_witnesses = 8;
  std::uint64_t chunk = 1 << 14;
};

struct Witness {
  FieldElem alpha;
  std::optional<FieldElem> gamma;
  unsigned position = 0;     // 1-based; 0 when normality is not required
  std::uint64_t alpha_log = 0;  // α = generator^alpha_log
};

struct SearchReport {
  std::uint64_t count = 0;
  std::vector<Witness> witnesses;
  double elapsed_ms = 0;
  bool exhaustive = false;
  bool counted = false;  // count is an exhaustive N or N_v
  bool found() const { return !witnesses.empty(); }
};

/// Pairs (α, γ) with every α + (i-1)β (R_i, r_i)-free and α + (v-1)β = f ∘ γ, γ g-free.
/// Enumerates γ. Throws CapExceeded, BadPosition, NotADivisor, NotADivisorPoly.
SearchReport count_Nv(const ProgressionSpec& spec, unsigned v, const std::vector<mpz_class>& R, const XnDivisor& g,
                      const SearchOptions& opts = {});
/// Same constraints, at least one position hitting f ∘ γ. Enumerates α.
SearchReport count_N(const ProgressionSpec& spec, const std::vector<mpz_class>& R, const XnDivisor& g,
                     const SearchOptions& opts = {});

/// First witness in generator-power order of α. Throws CapExceeded.
std::optional<Witness> find_progression(const ProgressionSpec& spec, const SearchOptions& opts = {});
SearchReport search_report(const ProgressionSpec& spec, const SearchOptions& opts = {});

/// Re-checks a witness with the direct tests of classify.
bool validate_witness(const ProgressionSpec& spec, const Witness& w);

/// q odd and gcd(q^3 - q, n) > 1.
bool check_admissible(std::uint64_t q, unsigned n);

/// R_i = (q^n - 1)/r_i, the values for which (R_i, r_i)-free means r_i-primitive.
std::vector<mpz_class> full_R(const ProgressionSpec& spec);

}  // namespace ffprog
