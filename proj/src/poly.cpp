#include "ffprog/poly.hpp"

#include <algorithm>
#include <sstream>

#include "ffprog/error.hpp"

namespace ffprog {

bool PolyFq::operator<(const PolyFq& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (std::size_t i = coeffs.size(); i-- > 0;)
    if (coeffs[i] != o.coeffs[i]) return coeffs[i] < o.coeffs[i];
  return false;
}

PolyFq poly_add(const BaseField& F, const PolyFq& a, const PolyFq& b) {
  std::vector<BaseField::Elem> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.add(a[i], b[i]);
  return PolyFq(std::move(c));
}

PolyFq poly_sub(const BaseField& F, const PolyFq& a, const PolyFq& b) {
  std::vector<BaseField::Elem> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.sub(a[i], b[i]);
  return PolyFq(std::move(c));
}

PolyFq poly_mul(const BaseField& F, const PolyFq& a, const PolyFq& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BaseField::Elem> c(a.coeffs.size() + b.coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a.coeffs[i], b.coeffs[j]));
  }
  return PolyFq(std::move(c));
}

PolyFq poly_scale(const BaseField& F, const PolyFq& a, BaseField::Elem k) {
  std::vector<BaseField::Elem> c(a.coeffs.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.mul(a.coeffs[i], k);
  return PolyFq(std::move(c));
}

void poly_divmod(const BaseField& F, const PolyFq& a, const PolyFq& b, PolyFq& quot, PolyFq& rem) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
  std::vector<BaseField::Elem> r = a.coeffs;
  const int db = b.degree();
  if (a.degree() < db) {
    quot = {};
    rem = a;
    return;
  }
  std::vector<BaseField::Elem> qc(a.degree() - db + 1, 0);
  const BaseField::Elem inv_lead = F.inv(b.lead());
  for (int k = a.degree(); k >= db; --k) {
    const BaseField::Elem c = F.mul(r[k], inv_lead);
    if (c == 0) continue;
    qc[k - db] = c;
    for (int i = 0; i <= db; ++i) r[k - db + i] = F.sub(r[k - db + i], F.mul(c, b.coeffs[i]));
  }
  r.resize(db);
  quot = PolyFq(std::move(qc));
  rem = PolyFq(std::move(r));
}

PolyFq poly_mod(const BaseField& F, const PolyFq& a, const PolyFq& b) {
  PolyFq q, r;
  poly_divmod(F, a, b, q, r);
  return r;
}

PolyFq poly_div_exact(const BaseField& F, const PolyFq& a, const PolyFq& b) {
  PolyFq q, r;
  poly_divmod(F, a, b, q, r);
  if (!r.is_zero()) throw Error(ErrorKind::NotADivisorPoly, "polynomial division is not exact");
  return q;
}

PolyFq poly_monic(const BaseField& F, const PolyFq& a) {
  if (a.is_zero()) return a;
  return poly_scale(F, a, F.inv(a.lead()));
}

PolyFq poly_gcd(const BaseField& F, PolyFq a, PolyFq b) {
  while (!b.is_zero()) {
    PolyFq r = poly_mod(F, a, b);
    a = std::move(b);
    b = poly_monic(F, r);
  }
  return poly_monic(F, a);
}

PolyFq poly_powmod(const BaseField& F, PolyFq base, const mpz_class& e, const PolyFq& mod) {
  PolyFq result = poly_mod(F, PolyFq::constant(1), mod);
  base = poly_mod(F, base, mod);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = poly_mod(F, poly_mul(F, result, result), mod);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = poly_mod(F, poly_mul(F, result, base), mod);
  }
  return result;
}

bool poly_divides(const BaseField& F, const PolyFq& d, const PolyFq& a) { return poly_mod(F, a, d).is_zero(); }

PolyFq xn_minus_one(const BaseField& F, unsigned n) {
  std::vector<BaseField::Elem> c(n + 1, 0);
  c[0] = F.neg(1);
  c[n] = F.add(c[n], 1);
  return PolyFq(std::move(c));
}

bool is_irreducible(const BaseField& F, const PolyFq& f) {
  const int d = f.degree();
  if (d < 1) return false;
  if (d == 1) return true;
  const PolyFq x = PolyFq::x_power(1);
  const mpz_class q(static_cast<unsigned long>(F.q()));
  PolyFq xq = x;
  for (int i = 1; 2 * i <= d; ++i) {
    xq = poly_powmod(F, xq, q, f);
    if (poly_gcd(F, poly_sub(F, xq, x), f).degree() > 0) return false;
  }
  return true;
}

PolyFq random_monic(const BaseField& F, unsigned degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, F.q() - 1);
  std::vector<BaseField::Elem> c(degree + 1);
  for (unsigned i = 0; i < degree; ++i) c[i] = dist(rng);
  c[degree] = 1;
  return PolyFq(std::move(c));
}

PolyFq find_irreducible(const BaseField& F, unsigned degree, std::uint64_t seed) {
  if (degree == 1) return PolyFq::x_power(1);
  std::mt19937_64 rng(seed);
  while (true) {
    PolyFq f = random_monic(F, degree, rng);
    if (f.coeffs[0] != 0 && is_irreducible(F, f)) return f;
  }
}

std::string to_string(const PolyFq& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) os << (i ? "," : "") << f.coeffs[i];
  return os.str();
}

}  // namespace ffprog
