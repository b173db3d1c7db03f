#include "ffprog/ffcore.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

#include "ffprog/error.hpp"
#include "ffprog/fqpoly.hpp"

namespace ffprog {

namespace {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  // splitmix64 over the tuple
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t v : {a, b, c, d}) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    h ^= h >> 31;
  }
  return h;
}

}  // namespace

std::vector<std::uint64_t> default_base_modulus(std::uint64_t p, unsigned s, std::uint64_t seed) {
  if (s == 1) return {0, 1};
  const BaseField Fp(p);
  return find_irreducible(Fp, s, mix_seed(p, s, 0, seed)).coeffs;
}

// ---------------------------------------------------------------- LogTable

LogTable::LogTable(const FieldCtx& ctx) : n_(ctx.size_u64() - 1) {
  const std::uint64_t size = n_ + 1;
  exp_.resize(n_);
  log_.assign(size, zero());
  FieldElem x = ctx.one();
  for (std::uint64_t t = 0; t < n_; ++t) {
    const std::uint64_t idx = ctx.index_of(x);
    exp_[t] = static_cast<std::uint32_t>(idx);
    log_[idx] = static_cast<Log>(t);
    x = ctx.mul(x, ctx.generator());
  }
  // Adding 1 only touches the lowest base-p digit of the index.
  const std::uint64_t p = ctx.p();
  zech_.resize(n_);
  for (std::uint64_t t = 0; t < n_; ++t) {
    const std::uint64_t idx = exp_[t];
    const std::uint64_t d0 = idx % p;
    const std::uint64_t plus_one = idx - d0 + (d0 + 1) % p;
    zech_[t] = log_[plus_one];
  }
  neg_one_ = p == 2 ? 0 : static_cast<Log>(n_ / 2);
  std::uint64_t qi = 1 % n_;
  for (unsigned i = 0; i < ctx.n(); ++i) {
    qpow_.push_back(qi);
    qi = mulmod(qi, ctx.q() % n_, n_);
  }
  if (n_ == 1) qpow_.assign(ctx.n(), 0);
}

// ---------------------------------------------------------------- FieldCtx

FieldCtx::FieldCtx(BaseField base, unsigned n) : base_(std::move(base)), n_(n) {}

std::uint64_t FieldCtx::size_u64() const {
  if (!mpz_fits_ulong_p(size_.get_mpz_t())) throw Error(ErrorKind::TooLarge, "field size exceeds 64 bits");
  return size_.get_ui();
}

const LogTable& FieldCtx::table() const {
  if (!table_) throw Error(ErrorKind::CapExceeded, "no log table for this context (q^n above table cap)");
  return *table_;
}

const XnFactorization& FieldCtx::xn() const {
  if (!xn_) throw std::logic_error("x^n - 1 was not factored for this context");
  return *xn_;
}

FieldElem FieldCtx::from_base(BaseField::Elem c) const {
  FieldElem a = zero();
  a.coeffs[0] = c;
  return a;
}

FieldElem FieldCtx::basis(unsigned j) const {
  FieldElem a = zero();
  if (n_ == 1) {
    // y is a root of x, i.e. 0; only y^0 = 1 is a basis vector.
    if (j == 0) a.coeffs[0] = 1;
    return a;
  }
  a.coeffs.at(j) = 1;
  return a;
}

bool FieldCtx::is_zero(const FieldElem& a) const {
  for (auto c : a.coeffs)
    if (c != 0) return false;
  return true;
}

bool FieldCtx::is_valid(const FieldElem& a) const {
  if (a.coeffs.size() != n_) return false;
  for (auto c : a.coeffs)
    if (c >= q()) return false;
  return true;
}

bool FieldCtx::in_base(const FieldElem& a) const {
  for (unsigned j = 1; j < n_; ++j)
    if (a.coeffs[j] != 0) return false;
  return true;
}

FieldElem FieldCtx::add(const FieldElem& a, const FieldElem& b) const {
  FieldElem r{std::vector<BaseField::Elem>(n_)};
  for (unsigned j = 0; j < n_; ++j) r.coeffs[j] = base_.add(a.coeffs[j], b.coeffs[j]);
  return r;
}

FieldElem FieldCtx::sub(const FieldElem& a, const FieldElem& b) const {
  FieldElem r{std::vector<BaseField::Elem>(n_)};
  for (unsigned j = 0; j < n_; ++j) r.coeffs[j] = base_.sub(a.coeffs[j], b.coeffs[j]);
  return r;
}

FieldElem FieldCtx::neg(const FieldElem& a) const {
  FieldElem r{std::vector<BaseField::Elem>(n_)};
  for (unsigned j = 0; j < n_; ++j) r.coeffs[j] = base_.neg(a.coeffs[j]);
  return r;
}

FieldElem FieldCtx::scale(const FieldElem& a, BaseField::Elem c) const {
  FieldElem r{std::vector<BaseField::Elem>(n_)};
  for (unsigned j = 0; j < n_; ++j) r.coeffs[j] = base_.mul(a.coeffs[j], c);
  return r;
}

FieldElem FieldCtx::mul(const FieldElem& a, const FieldElem& b) const {
  if (n_ == 1) return FieldElem{{base_.mul(a.coeffs[0], b.coeffs[0])}};
  std::vector<BaseField::Elem> prod(2 * n_ - 1, 0);
  for (unsigned i = 0; i < n_; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (unsigned j = 0; j < n_; ++j) {
      if (b.coeffs[j] == 0) continue;
      prod[i + j] = base_.add(prod[i + j], base_.mul(a.coeffs[i], b.coeffs[j]));
    }
  }
  const auto& m = ext_modulus_.coeffs;
  for (unsigned k = 2 * n_ - 1; k-- > n_;) {
    const BaseField::Elem c = prod[k];
    if (c == 0) continue;
    for (unsigned i = 0; i < n_; ++i) prod[k - n_ + i] = base_.sub(prod[k - n_ + i], base_.mul(c, m[i]));
    prod[k] = 0;
  }
  prod.resize(n_);
  return FieldElem{std::move(prod)};
}

FieldElem FieldCtx::pow(const FieldElem& a, const mpz_class& e) const {
  FieldElem r = one();
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return r;
  for (std::size_t i = bits; i-- > 0;) {
    r = mul(r, r);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, a);
  }
  return r;
}

FieldElem FieldCtx::inv(const FieldElem& a) const {
  if (is_zero(a)) throw Error(ErrorKind::ZeroElement, "inverse of zero");
  return pow(a, size_ - 2);
}

FieldElem FieldCtx::frobenius(const FieldElem& a) const {
  if (n_ == 1) return a;
  FieldElem r = zero();
  for (unsigned j = 0; j < n_; ++j) {
    const BaseField::Elem c = a.coeffs[j];
    if (c == 0) continue;
    const FieldElem& col = frob_cols_[j];
    for (unsigned i = 0; i < n_; ++i) r.coeffs[i] = base_.add(r.coeffs[i], base_.mul(c, col.coeffs[i]));
  }
  return r;
}

BaseField::Elem FieldCtx::trace_to_base(const FieldElem& a) const {
  FieldElem t = zero(), x = a;
  for (unsigned i = 0; i < n_; ++i) {
    t = add(t, x);
    x = frobenius(x);
  }
  return t.coeffs[0];
}

std::uint64_t FieldCtx::trace_to_prime(const FieldElem& a) const { return base_.trace_to_prime(trace_to_base(a)); }

const FieldElem& FieldCtx::generator() const {
  if (!has_generator_) throw std::logic_error("field context was built without a generator");
  return generator_;
}

mpz_class FieldCtx::mult_order(const FieldElem& a) const {
  if (!has_generator_) throw std::logic_error("field context was built without a factored group order");
  if (is_zero(a)) throw Error(ErrorKind::ZeroElement, "multiplicative order of zero");
  mpz_class order = group_order_.value;
  for (const auto& [ell, e] : group_order_.factors) {
    order /= ipow(ell, e);
    FieldElem t = pow(a, order);
    while (t != one()) {
      t = pow(t, ell);
      order *= ell;
    }
  }
  return order;
}

std::uint64_t FieldCtx::index_of(const FieldElem& a) const {
  std::uint64_t idx = 0;
  for (unsigned j = n_; j-- > 0;) idx = idx * q() + a.coeffs[j];
  return idx;
}

FieldElem FieldCtx::element_at(std::uint64_t index) const {
  FieldElem a = zero();
  for (unsigned j = 0; j < n_; ++j) {
    a.coeffs[j] = index % q();
    index /= q();
  }
  return a;
}

std::string FieldCtx::format(const FieldElem& a) const {
  std::ostringstream os;
  for (unsigned j = 0; j < n_; ++j) os << (j ? "," : "") << a.coeffs[j];
  return os.str();
}

FieldElem FieldCtx::parse(const std::string& text) const {
  FieldElem a = zero();
  std::stringstream ss(text);
  std::string tok;
  unsigned j = 0;
  while (std::getline(ss, tok, ',')) {
    if (j >= n_) throw std::invalid_argument("element has more than n coefficients: " + text);
    std::size_t used = 0;
    const unsigned long long v = std::stoull(tok, &used);
    if (v >= q()) throw std::invalid_argument("coefficient out of range: " + tok);
    a.coeffs[j++] = v;
  }
  if (j == 0) throw std::invalid_argument("empty element");
  return a;
}

// ---------------------------------------------------------------- make_field

FieldRef make_field(std::uint64_t p, unsigned s, unsigned n, const FieldOptions& opts) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (s < 1 || n < 1) throw std::invalid_argument("make_field: s and n must be positive");
  const mpz_class q = ipow(mpz_class(static_cast<unsigned long>(p)), s);
  if (q >= mpz_class(1UL << 62)) throw Error(ErrorKind::TooLarge, "q above 2^62");
  const mpz_class size = ipow(q, n);
  if (opts.search_cap != 0 && size > mpz_class(static_cast<unsigned long>(opts.search_cap)))
    throw Error(ErrorKind::TooLarge, "q^n = " + size.get_str() + " exceeds the cap " + std::to_string(opts.search_cap));

  std::vector<std::uint64_t> bmod = opts.base_modulus ? *opts.base_modulus : default_base_modulus(p, s, opts.seed);
  if (bmod.size() != s + 1 || bmod.back() != 1) throw std::invalid_argument("base modulus must be monic of degree s");
  if (s > 1 && !is_irreducible(BaseField(p), PolyFq(bmod)))
    throw std::invalid_argument("base modulus is not irreducible");
  BaseField base = s == 1 ? BaseField(p) : BaseField(p, bmod);

  std::shared_ptr<FieldCtx> ctx(new FieldCtx(std::move(base), n));
  ctx->size_ = size;
  ctx->seed_ = opts.seed;
  const BaseField& F = ctx->base_;

  if (opts.ext_modulus) {
    if (opts.ext_modulus->degree() != static_cast<int>(n) || !opts.ext_modulus->is_monic() ||
        !is_irreducible(F, *opts.ext_modulus))
      throw std::invalid_argument("extension modulus must be monic irreducible of degree n");
    ctx->ext_modulus_ = *opts.ext_modulus;
  } else {
    ctx->ext_modulus_ = find_irreducible(F, n, mix_seed(p, s, n, opts.seed));
  }

  // Frobenius columns (y^j)^q.
  ctx->frob_cols_.resize(n);
  if (n > 1) {
    const PolyFq yq = poly_powmod(F, PolyFq::x_power(1), q, ctx->ext_modulus_);
    FieldElem yq_elem = ctx->zero();
    for (unsigned i = 0; i < n; ++i) yq_elem.coeffs[i] = yq[i];
    FieldElem cur = ctx->one();
    for (unsigned j = 0; j < n; ++j) {
      ctx->frob_cols_[j] = cur;
      cur = ctx->mul(cur, yq_elem);
    }
  }

  if (!opts.find_generator) {
    ctx->group_order_.value = size - 1;
    if (opts.factor_xn) ctx->xn_ = std::make_shared<const XnFactorization>(factor_xn_minus_1(*ctx));
    return ctx;
  }
  ctx->group_order_ = factorize(mpz_class(size - 1));
  std::mt19937_64 rng(mix_seed(p, s, n, opts.seed ^ 0x67656eULL));
  std::uniform_int_distribution<std::uint64_t> dist(0, F.q() - 1);
  while (true) {
    FieldElem c = ctx->zero();
    for (auto& x : c.coeffs) x = dist(rng);
    if (ctx->is_zero(c)) continue;
    bool ok = true;
    for (const auto& [ell, e] : ctx->group_order_.factors) {
      if (ctx->pow(c, ctx->group_order_.value / ell) == ctx->one()) {
        ok = false;
        break;
      }
    }
    if (ok) {
      ctx->generator_ = c;
      ctx->has_generator_ = true;
      break;
    }
  }

  if (size <= mpz_class(static_cast<unsigned long>(opts.table_cap)) && size <= mpz_class(1UL << 32))
    ctx->table_ = std::make_shared<const LogTable>(*ctx);
  if (opts.factor_xn) ctx->xn_ = std::make_shared<const XnFactorization>(factor_xn_minus_1(*ctx));
  return ctx;
}

FieldRef make_field_q(std::uint64_t q, unsigned n, const FieldOptions& opts) {
  std::uint64_t p = 0;
  unsigned s = 0;
  if (!prime_power_decompose(q, p, s)) throw Error(ErrorKind::NotPrime, std::to_string(q) + " is not a prime power");
  return make_field(p, s, n, opts);
}

}  // namespace ffprog
