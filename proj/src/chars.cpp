#include "ffprog/chars.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ffprog/error.hpp"
#include "ffprog/intnt.hpp"

namespace ffprog {

namespace {

// Tr(c * w) mod p for each w in images, via field arithmetic.
bool annihilates(const FieldCtx& ctx, const FieldElem& c, const std::vector<FieldElem>& images) {
  for (const FieldElem& w : images)
    if (ctx.trace_to_prime(ctx.mul(c, w)) != 0) return false;
  return true;
}

// h ∘ (z^i y^j) over an F_p-basis of F_{q^n}; z^i is packed as p^i.
std::vector<FieldElem> basis_images(const FieldCtx& ctx, const PolyFq& h) {
  std::vector<FieldElem> out;
  for (unsigned j = 0; j < ctx.n(); ++j) {
    const FieldElem w = module_action(ctx, h, ctx.basis(j));
    BaseField::Elem z = 1;
    for (unsigned i = 0; i < ctx.s(); ++i, z *= ctx.p()) out.push_back(ctx.mul(ctx.from_base(z), w));
  }
  return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

}  // namespace

XnDivisor add_char_fq_order_divisor(const FieldCtx& ctx, const FieldElem& c) {
  for (const XnDivisor& h : monic_divisors(ctx.xn()))
    if (annihilates(ctx, c, basis_images(ctx, divisor_poly(ctx, h)))) return h;
  throw std::logic_error("additive character without an F_q-order");
}

PolyFq add_char_fq_order(const FieldCtx& ctx, const FieldElem& c) {
  return divisor_poly(ctx, add_char_fq_order_divisor(ctx, c));
}

CharacterTables::CharacterTables(FieldRef ctx, std::uint64_t cap) : ctx_(std::move(ctx)) {
  const FieldCtx& F = *ctx_;
  if (F.field_size() > mpz_class(static_cast<unsigned long>(cap)))
    throw Error(ErrorKind::CapExceeded, "character tables need q^n <= " + std::to_string(cap));
  size_ = F.size_u64();
  const std::uint64_t N = size_ - 1;
  const LogTable& T = F.table();
  log_.resize(size_);
  exp_.resize(N);
  trace_.resize(size_);
  for (std::uint64_t i = 0; i < size_; ++i) {
    log_[i] = T.log_of_index(i);
    trace_[i] = F.trace_to_prime(F.element_at(i));
  }
  for (std::uint64_t t = 0; t < N; ++t) exp_[t] = T.index_of_log(static_cast<LogTable::Log>(t));
  const double two_pi = 2 * std::numbers::pi;
  root_n_.resize(N);
  for (std::uint64_t k = 0; k < N; ++k) root_n_[k] = std::polar(1.0, two_pi * double(k) / double(N));
  root_p_.resize(F.p());
  for (std::uint64_t k = 0; k < F.p(); ++k) root_p_[k] = std::polar(1.0, two_pi * double(k) / double(F.p()));

  poly_divs_ = monic_divisors(F.xn());
  for (std::size_t i = 0; i < poly_divs_.size(); ++i) poly_pos_[poly_divs_[i].exps] = i;
  // Images h ∘ y^j as indices, for the exact order scan.
  std::vector<std::vector<std::uint64_t>> images(poly_divs_.size());
  for (std::size_t i = 0; i < poly_divs_.size(); ++i)
    for (const FieldElem& w : basis_images(F, divisor_poly(F, poly_divs_[i]))) images[i].push_back(F.index_of(w));
  add_order_.resize(size_);
  for (std::uint64_t c = 0; c < size_; ++c) {
    std::size_t found = poly_divs_.size();
    for (std::size_t i = 0; i < poly_divs_.size() && found == poly_divs_.size(); ++i) {
      bool ok = true;
      for (std::uint64_t w : images[i])
        if (trace_[mul_index(c, w)] != 0) {
          ok = false;
          break;
        }
      if (ok) found = i;
    }
    if (found == poly_divs_.size()) throw std::logic_error("additive character without an F_q-order");
    add_order_[c] = found;
  }

  for (const mpz_class& d : divisors(F.group_order())) int_divs_.push_back(d.get_ui());
  mult_order_.resize(N);
  for (std::uint64_t e = 0; e < N; ++e) mult_order_[e] = int_divisor_position(N / gcd_u64(e, N));
}

std::uint64_t CharacterTables::mul_index(std::uint64_t a, std::uint64_t b) const {
  if (a == 0 || b == 0) return 0;
  const std::uint64_t N = group_size();
  std::uint64_t t = log_[a] + log_[b];
  if (t >= N) t -= N;
  return exp_[t];
}

Complex CharacterTables::mult_char(std::uint64_t e, std::uint64_t idx) const {
  if (idx == 0) return 0;
  return root_n_[mulmod(e % group_size(), log_[idx], group_size())];
}

Complex CharacterTables::add_char(std::uint64_t c, std::uint64_t idx) const { return root_p_[trace_[mul_index(c, idx)]]; }

std::size_t CharacterTables::poly_divisor_position(const XnDivisor& d) const {
  auto it = poly_pos_.find(d.exps);
  if (it == poly_pos_.end()) throw Error(ErrorKind::NotADivisorPoly, "not a divisor of x^n - 1");
  return it->second;
}

std::size_t CharacterTables::int_divisor_position(std::uint64_t d) const {
  auto it = std::lower_bound(int_divs_.begin(), int_divs_.end(), d);
  if (it == int_divs_.end() || *it != d) throw Error(ErrorKind::NotADivisor, std::to_string(d) + " does not divide q^n - 1");
  return static_cast<std::size_t>(it - int_divs_.begin());
}

std::vector<Complex> CharacterTables::additive_sums(std::uint64_t idx) const {
  std::vector<Complex> out(poly_divs_.size());
  for (std::uint64_t c = 0; c < size_; ++c) out[add_order_[c]] += add_char(c, idx);
  return out;
}

std::vector<Complex> CharacterTables::multiplicative_sums(std::uint64_t idx) const {
  if (idx == 0) throw Error(ErrorKind::ZeroElement, "multiplicative characters are not evaluated at 0");
  const std::uint64_t N = group_size();
  std::vector<Complex> out(int_divs_.size());
  const std::uint64_t t = log_[idx];
  std::uint64_t k = 0;
  for (std::uint64_t e = 0; e < N; ++e) {
    out[mult_order_[e]] += root_n_[k];
    k += t;
    if (k >= N) k -= N;
  }
  return out;
}

Complex omega_g(const CharacterTables& t, const std::vector<Complex>& add_sums, const XnDivisor& g) {
  const FieldCtx& F = t.ctx();
  const XnFactorization& xn = F.xn();
  Complex acc = 0;
  // Square-free h | g only; μ_q vanishes elsewhere.
  const std::size_t w = g.exps.size();
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < w; ++i)
    if (g.exps[i] > 0) support.push_back(i);
  for (std::uint64_t mask = 0; mask < (1ULL << support.size()); ++mask) {
    XnDivisor h = unit_divisor(xn);
    for (std::size_t b = 0; b < support.size(); ++b)
      if (mask >> b & 1) h.exps[support[b]] = 1;
    const double coef = double(mobius_q(h)) / phi_q(xn, h).get_d();
    acc += coef * add_sums[t.poly_divisor_position(h)];
  }
  const mpq_class theta(phi_q(xn, g), ipow(mpz_class(static_cast<unsigned long>(xn.q)), divisor_degree(xn, g)));
  return theta.get_d() * acc;
}

Complex omega_g(const CharacterTables& t, const FieldElem& a, const XnDivisor& g) {
  return omega_g(t, t.additive_sums(t.ctx().index_of(a)), g);
}

Complex omega_g(const CharacterTables& t, const FieldElem& a, const PolyFq& g) {
  auto d = factor_over(t.ctx(), g);
  if (!d || !g.is_monic()) throw Error(ErrorKind::NotADivisorPoly, "g must be a monic divisor of x^n - 1");
  return omega_g(t, a, *d);
}

Complex indicator_Rr(const CharacterTables& t, const std::vector<Complex>& mult_sums, std::uint64_t R, std::uint64_t r) {
  const std::uint64_t N = t.group_size();
  if (r == 0 || N % r != 0) throw Error(ErrorKind::NotADivisor, "r does not divide q^n - 1");
  if (R == 0 || (N / r) % R != 0) throw Error(ErrorKind::NotADivisor, "R does not divide (q^n - 1)/r");
  const FactoredInt Rf = factorize(R);
  const double theta = euler_phi(Rf).get_d() / double(R);
  Complex acc = 0;
  for (const mpz_class& dz : divisors(factorize(R * r))) {
    const std::uint64_t d = dz.get_ui();
    const std::uint64_t dr = d / gcd_u64(d, r);
    const FactoredInt drf = factorize(dr);
    const int mu = mobius(drf);
    if (mu == 0) continue;
    acc += (double(mu) / euler_phi(drf).get_d()) * mult_sums[t.int_divisor_position(d)];
  }
  return theta / double(r) * acc;
}

Complex indicator_Rr(const CharacterTables& t, const FieldElem& a, std::uint64_t R, std::uint64_t r) {
  return indicator_Rr(t, t.multiplicative_sums(t.ctx().index_of(a)), R, r);
}

Complex i0(const CharacterTables& t, const FieldElem& a) {
  const std::uint64_t idx = t.ctx().index_of(a);
  Complex acc = 0;
  for (std::uint64_t c = 0; c < t.size(); ++c) acc += t.add_char(c, idx);
  return acc / double(t.size());
}

namespace {

void check_case_a(const CharacterTables& t, std::uint64_t r, const WeilOptions& opts, WeilReport& rep) {
  const std::uint64_t N = t.group_size();
  std::vector<std::uint64_t> gpow(N);  // index of g^{r t}
  {
    const FieldCtx& F = t.ctx();
    const FieldElem gr = F.pow(F.generator(), mpz_class(static_cast<unsigned long>(r)));
    FieldElem x = F.one();
    for (std::uint64_t k = 0; k < N; ++k) {
      gpow[k] = F.index_of(x);
      x = F.mul(x, gr);
    }
  }
  std::vector<Complex> w(N);
  for (std::uint64_t c = 1; c < t.size(); ++c) {
    for (std::uint64_t k = 0; k < N; ++k) w[k] = t.add_char(c, gpow[k]);
    for (std::uint64_t e = 0; e < N; ++e) {
      Complex acc = 0;
      std::uint64_t ek = 0;
      for (std::uint64_t k = 0; k < N; ++k) {
        acc += t.root_n(ek) * w[k];
        ek += e;
        if (ek >= N) ek -= N;
      }
      ++rep.case_a_sums;
      rep.case_a_max = std::max(rep.case_a_max, std::abs(acc));
    }
  }
  rep.case_a_ok = rep.case_a_max <= rep.case_a_bound + opts.tolerance;
}

void check_case_b(const CharacterTables& t, const WeilOptions& opts, WeilReport& rep, std::mt19937_64& rng) {
  const FieldCtx& F = t.ctx();
  const XnFactorization& xn = F.xn();
  const std::uint64_t size = t.size();
  const XnDivisor full = full_divisor(xn);
  for (const XnDivisor& fd : t.poly_divisors()) {
    const unsigned k = divisor_degree(xn, fd);
    const LinearMap L = action_matrix(F, divisor_poly(F, fd));
    std::vector<std::uint64_t> image(size);  // f ∘ γ
    for (std::uint64_t g = 0; g < size; ++g) image[g] = F.index_of(L.apply(F.base(), F.element_at(g)));
    std::vector<std::uint64_t> basis_idx, basis_img;
    for (unsigned j = 0; j < F.n(); ++j) {
      BaseField::Elem z = 1;
      for (unsigned i = 0; i < F.s(); ++i, z *= F.p()) {
        basis_idx.push_back(F.index_of(F.mul(F.from_base(z), F.basis(j))));
        basis_img.push_back(image[basis_idx.back()]);
      }
    }
    // χ_d = f ∘ ψ_c, checked exactly on an F_p-basis.
    auto composes = [&](std::uint64_t d, std::uint64_t c) {
      for (std::size_t j = 0; j < basis_idx.size(); ++j)
        if (t.trace_of(t.mul_index(d, basis_idx[j])) != t.trace_of(t.mul_index(c, basis_img[j]))) return false;
      return true;
    };
    const XnDivisor quotient = complement(xn, fd);
    const mpz_class qk = ipow(mpz_class(static_cast<unsigned long>(xn.q)), k);
    for (std::uint64_t d = 0; d < size; ++d) {
      std::uint64_t count = 0;
      for (std::uint64_t c = 0; c < size; ++c) count += composes(d, c);
      const XnDivisor& ord = t.poly_divisors()[t.add_order_of(d)];
      bool divides = true;
      for (std::size_t i = 0; i < ord.exps.size(); ++i) divides = divides && ord.exps[i] <= quotient.exps[i];
      const mpz_class expected = divides ? qk : mpz_class(0);
      ++rep.case_b_preimage_checks;
      if (mpz_class(static_cast<unsigned long>(count)) != expected) rep.case_b_ok = false;
    }
    std::uniform_int_distribution<std::uint64_t> pick(0, size - 1);
    for (unsigned s = 0; s < opts.case_b_sampled_sums; ++s) {
      const std::uint64_t c = pick(rng);
      std::uint64_t d = pick(rng);
      if (s % 2 == 0)
        for (std::uint64_t cand = 0; cand < size; ++cand)
          if (composes(cand, c)) {
            d = cand;
            break;
          }
      Complex acc = 0;
      for (std::uint64_t g = 0; g < size; ++g) acc += t.add_char(d, g) * std::conj(t.add_char(c, image[g]));
      const double expected = composes(d, c) ? double(size) : 0.0;
      ++rep.case_b_sums;
      rep.case_b_max_error = std::max(rep.case_b_max_error, std::abs(acc - expected));
    }
  }
  if (rep.case_b_max_error > opts.tolerance) rep.case_b_ok = false;
}

// v(x) = Π (x + (i-1)β)^{c_i}, χ = η_1, u_v(x) = x + (v-1)β.
void check_cotaparaf(const CharacterTables& t, const WeilOptions& opts, WeilReport& rep, std::mt19937_64& rng) {
  const FieldCtx& F = t.ctx();
  const std::uint64_t N = t.group_size();
  const std::uint64_t size = t.size();
  const double sqrt_size = std::sqrt(double(size));
  std::vector<FieldElem> betas{F.one()};
  if (!(F.generator() == F.one())) betas.push_back(F.generator());
  std::uniform_int_distribution<std::uint64_t> exp_pick(0, N - 1), char_pick(1, size - 1);
  for (unsigned m = 2; m <= 3 && m <= F.p(); ++m) {
    for (const FieldElem& beta : betas) {
      std::vector<std::vector<std::uint64_t>> shifted(m, std::vector<std::uint64_t>(size));
      FieldElem shift = F.zero();
      for (unsigned i = 0; i < m; ++i) {
        for (std::uint64_t a = 0; a < size; ++a) shifted[i][a] = F.index_of(F.add(F.element_at(a), shift));
        shift = F.add(shift, beta);
      }
      for (unsigned s = 0; s < opts.cotaparaf_tuples; ++s) {
        std::vector<std::uint64_t> c(m);
        for (auto& ci : c) ci = (s % 3 == 0 && &ci == &c.back()) ? 0 : exp_pick(rng);
        if (std::all_of(c.begin(), c.end(), [](std::uint64_t x) { return x == 0; })) c[0] = 1;
        const unsigned D1 = static_cast<unsigned>(std::count_if(c.begin(), c.end(), [](std::uint64_t x) { return x != 0; }));
        std::vector<std::uint64_t> chi_v(size, N);  // log-exponent of χ(v(α)), N where v(α) = 0
        for (std::uint64_t a = 0; a < size; ++a) {
          std::uint64_t acc = 0;
          bool zero = false;
          for (unsigned i = 0; i < m && !zero; ++i) {
            if (c[i] == 0) continue;
            const std::uint64_t idx = shifted[i][a];
            if (idx == 0) zero = true;
            else acc = (acc + mulmod(c[i], t.log_of(idx), N)) % N;
          }
          if (!zero) chi_v[a] = acc;
        }
        Complex part_a = 0;
        for (std::uint64_t a = 0; a < size; ++a)
          if (chi_v[a] != N) part_a += t.root_n(chi_v[a]);
        const double bound_a = (double(D1) - 1) * sqrt_size;
        ++rep.cotaparaf_sums;
        if (std::abs(part_a) > bound_a + opts.tolerance) rep.cotaparaf_ok = false;
        if (bound_a > 0) rep.cotaparaf_max_ratio = std::max(rep.cotaparaf_max_ratio, std::abs(part_a) / bound_a);
        for (unsigned j = 0; j < opts.cotaparaf_add_chars; ++j) {
          const std::uint64_t psi = char_pick(rng);
          for (unsigned v = 0; v < m; ++v) {
            Complex part_b = 0;
            for (std::uint64_t a = 0; a < size; ++a)
              if (chi_v[a] != N) part_b += t.root_n(chi_v[a]) * t.add_char(psi, shifted[v][a]);
            const double bound_b = double(D1) * sqrt_size;
            ++rep.cotaparaf_sums;
            if (std::abs(part_b) > bound_b + opts.tolerance) rep.cotaparaf_ok = false;
            rep.cotaparaf_max_ratio = std::max(rep.cotaparaf_max_ratio, std::abs(part_b) / bound_b);
          }
        }
      }
    }
  }
}

}  // namespace

WeilReport check_weil_bounds(const CharacterTables& t, std::uint64_t r, const WeilOptions& opts) {
  if (r == 0 || t.group_size() % r != 0) throw Error(ErrorKind::NotADivisor, "r does not divide q^n - 1");
  WeilReport rep;
  rep.r = r;
  rep.case_a_bound = double(r) * std::sqrt(double(t.size()));
  std::mt19937_64 rng(opts.seed ^ (t.size() * 0x9e3779b97f4a7c15ULL) ^ r);
  check_case_a(t, r, opts, rep);
  check_case_b(t, opts, rep, rng);
  check_cotaparaf(t, opts, rep, rng);
  return rep;
}

}  // namespace ffprog
