#include "ffprog/basefield.hpp"

#include <random>
#include <stdexcept>

#include "ffprog/error.hpp"
#include "ffprog/intnt.hpp"

namespace ffprog {

BaseField::BaseField(std::uint64_t p) : p_(p), s_(1), q_(p), modulus_{0, 1}, digit_pow_{1} {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (p >= (1ULL << 62)) throw Error(ErrorKind::TooLarge, "characteristic above 2^62");
}

BaseField::BaseField(std::uint64_t p, std::vector<std::uint64_t> modulus)
    : p_(p), s_(static_cast<unsigned>(modulus.size() - 1)), q_(1), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (s_ < 1 || modulus_.back() != 1) throw std::invalid_argument("BaseField: modulus must be monic of degree >= 1");
  if (s_ == 1) {
    modulus_ = {0, 1};
    q_ = p_;
    digit_pow_ = {1};
    return;
  }
  for (unsigned i = 0; i < s_; ++i) {
    digit_pow_.push_back(q_);
    if (q_ > kMaxTabulatedOrder / p_) throw Error(ErrorKind::TooLarge, "extension base field above 2^24 elements");
    q_ *= p_;
  }

  // Find a generator of F_q^* by seeded random search, then tabulate.
  const FactoredInt order = factorize(q_ - 1);
  std::mt19937_64 rng(p_ * 1000003ULL + s_);
  std::uniform_int_distribution<std::uint64_t> dist(1, q_ - 1);
  Elem gen = 0;
  while (gen == 0) {
    Elem c = dist(rng);
    auto slow_pow = [&](Elem a, std::uint64_t e) {
      Elem r = 1;
      while (e) {
        if (e & 1) r = slow_mul(r, a);
        a = slow_mul(a, a);
        e >>= 1;
      }
      return r;
    };
    if (slow_pow(c, q_ - 1) != 1) throw std::logic_error("BaseField: modulus is not irreducible");
    bool ok = true;
    for (const auto& [ell, e] : order.factors) {
      if (slow_pow(c, (q_ - 1) / ell.get_ui()) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) gen = c;
  }
  exp_.resize(q_ - 1);
  log_.assign(q_, 0);
  Elem x = 1;
  for (std::uint64_t t = 0; t + 1 < q_; ++t) {
    exp_[t] = static_cast<std::uint32_t>(x);
    log_[x] = static_cast<std::uint32_t>(t);
    x = slow_mul(x, gen);
  }
}

std::vector<std::uint64_t> BaseField::digits(Elem a) const {
  std::vector<std::uint64_t> d(s_);
  if (s_ == 1) {
    d[0] = a;
    return d;
  }
  for (unsigned i = 0; i < s_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

BaseField::Elem BaseField::from_digits(const std::vector<std::uint64_t>& d) const {
  Elem a = 0;
  for (unsigned i = s_; i-- > 0;) a = a * p_ + (i < d.size() ? d[i] % p_ : 0);
  return a;
}

BaseField::Elem BaseField::add(Elem a, Elem b) const {
  if (s_ == 1) {
    Elem r = a + b;
    return r >= p_ ? r - p_ : r;
  }
  if (p_ == 2) return a ^ b;
  Elem r = 0;
  for (unsigned i = 0; i < s_; ++i) {
    std::uint64_t x = a % p_ + b % p_;
    if (x >= p_) x -= p_;
    r += x * digit_pow_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

BaseField::Elem BaseField::neg(Elem a) const {
  if (s_ == 1) return a == 0 ? 0 : p_ - a;
  if (p_ == 2) return a;
  Elem r = 0;
  for (unsigned i = 0; i < s_; ++i) {
    std::uint64_t x = a % p_;
    r += (x == 0 ? 0 : p_ - x) * digit_pow_[i];
    a /= p_;
  }
  return r;
}

BaseField::Elem BaseField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

BaseField::Elem BaseField::mul(Elem a, Elem b) const {
  if (s_ == 1) return mulmod(a, b, p_);
  if (a == 0 || b == 0) return 0;
  std::uint64_t t = std::uint64_t(log_[a]) + log_[b];
  if (t >= q_ - 1) t -= q_ - 1;
  return exp_[t];
}

BaseField::Elem BaseField::inv(Elem a) const {
  if (a == 0) throw Error(ErrorKind::ZeroElement, "inverse of zero in F_q");
  if (s_ == 1) return pow(a, p_ - 2);
  std::uint64_t t = log_[a];
  return exp_[t == 0 ? 0 : q_ - 1 - t];
}

BaseField::Elem BaseField::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t BaseField::trace_to_prime(Elem a) const {
  Elem t = 0, x = a;
  for (unsigned j = 0; j < s_; ++j) {
    t = add(t, x);
    x = pow(x, p_);
  }
  return t;  // lies in F_p, i.e. digit 0 only
}

BaseField::Elem BaseField::slow_mul(Elem a, Elem b) const {
  const auto da = digits(a), db = digits(b);
  std::vector<std::uint64_t> prod(2 * s_ - 1, 0);
  for (unsigned i = 0; i < s_; ++i)
    for (unsigned j = 0; j < s_; ++j) prod[i + j] = (prod[i + j] + mulmod(da[i], db[j], p_)) % p_;
  for (unsigned k = 2 * s_ - 1; k-- > s_;) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    for (unsigned i = 0; i < s_; ++i) {
      // subtract c * z^{k-s} * modulus (monic)
      prod[k - s_ + i] = (prod[k - s_ + i] + p_ - mulmod(c, modulus_[i], p_)) % p_;
    }
    prod[k] = 0;
  }
  prod.resize(s_);
  return from_digits(prod);
}

}  // namespace ffprog
