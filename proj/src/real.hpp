#pragma once

#include <string>

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

namespace ffprog {

// 200 significant decimal digits; far beyond the 50 guard digits needed.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<200>,
                                           boost::multiprecision::et_off>;

inline constexpr int kRealDigits = 200;

inline Real to_real(const mpz_class& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

inline Real to_real(const mpq_class& x) {
  Real r;
  mpfr_set_q(r.backend().data(), x.get_mpq_t(), MPFR_RNDN);
  return r;
}

inline Real log_of(const mpz_class& z) { return boost::multiprecision::log(to_real(z)); }

/// Scientific notation with the given number of significant digits.
inline std::string sci(const Real& x, int digits) { return x.str(digits, std::ios_base::scientific); }

}  // namespace ffprog
