#include "ffprog/intnt.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <stdexcept>

#include "ffprog/error.hpp"

namespace ffprog {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::NotADivisor: return "NotADivisor";
    case ErrorKind::NotADivisorPoly: return "NotADivisorPoly";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::BadDegree: return "BadDegree";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::BadPosition: return "BadPosition";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::NonPositiveDelta: return "NonPositiveDelta";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::ReplicationMismatch: return "ReplicationMismatch";
  }
  return "Unknown";
}

namespace {

// Sieve of Eratosthenes that grows on demand; shared by every caller.
class PrimeCache {
 public:
  static PrimeCache& instance() {
    static PrimeCache cache;
    return cache;
  }

  std::vector<std::uint64_t> below(std::uint64_t limit) {
    std::lock_guard lock(mu_);
    ensure_limit(limit);
    auto end = std::lower_bound(primes_.begin(), primes_.end(), limit);
    return {primes_.begin(), end};
  }

  std::uint64_t nth(unsigned e) {
    std::lock_guard lock(mu_);
    while (primes_.size() < e) ensure_limit(std::max<std::uint64_t>(2 * limit_, 1024));
    return primes_[e - 1];
  }

 private:
  void ensure_limit(std::uint64_t limit) {
    if (limit <= limit_) return;
    std::vector<bool> composite(limit, false);
    primes_.clear();
    for (std::uint64_t i = 2; i < limit; ++i) {
      if (composite[i]) continue;
      primes_.push_back(i);
      for (std::uint64_t j = i * i; j < limit; j += i) composite[j] = true;
    }
    limit_ = limit;
  }

  std::mutex mu_;
  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> primes_;
};

constexpr unsigned long kTrialLimit = 1000000;

// Deterministic for n < 3.3e24 with these bases.
bool miller_rabin(const mpz_class& n) {
  static const unsigned kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  mpz_class d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  mpz_class x;
  const mpz_class nm1 = n - 1;
  for (unsigned a : kBases) {
    if (cmp(n, a) == 0) return true;
    mpz_class base = a;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) continue;
    bool witness = true;
    for (unsigned long i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == nm1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

mpz_class pollard_brent(const mpz_class& n, std::mt19937_64& rng) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  std::uniform_int_distribution<unsigned long> dist(1, 1UL << 40);
  while (true) {
    mpz_class y = dist(rng) % n, c = dist(rng) % n, g = 1, q = 1, x, ys;
    const unsigned long m = 128;
    unsigned long r = 1;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = (y * y + c) % n;
          mpz_class diff = x - y;
          q = q * abs(diff) % n;
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = (ys * ys + c) % n;
        mpz_class diff = x - ys;
        g = gcd(abs(diff), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rec(const mpz_class& n, FactoredInt& out, std::mt19937_64& rng) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.factors[n] += 1;
    return;
  }
  mpz_class d = pollard_brent(n, rng);
  factor_rec(d, out, rng);
  factor_rec(n / d, out, rng);
}

}  // namespace

std::vector<mpz_class> FactoredInt::primes() const {
  std::vector<mpz_class> out;
  out.reserve(factors.size());
  for (const auto& [p, e] : factors) out.push_back(p);
  return out;
}

FactoredInt FactoredInt::quotient(const mpz_class& d) const {
  if (d <= 0 || value % d != 0) throw Error(ErrorKind::NotADivisor, "quotient by a non-divisor");
  FactoredInt out;
  out.value = value / d;
  mpz_class rest = d;
  for (const auto& [p, e] : factors) {
    unsigned k = 0;
    while (rest % p == 0) {
      rest /= p;
      ++k;
    }
    if (e > k) out.factors.emplace(p, e - k);
  }
  return out;
}

mpz_class FactoredInt::recompose() const {
  mpz_class v = 1;
  for (const auto& [p, e] : factors) v *= ipow(p, e);
  return v;
}

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  static const mpz_class kDeterministicBound("3317044064679887385961981");
  if (n < kDeterministicBound) return miller_rabin(n);
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

bool is_prime(std::uint64_t n) { return is_prime(mpz_class(static_cast<unsigned long>(n))); }

FactoredInt factorize(const mpz_class& n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  FactoredInt out;
  out.value = n;
  mpz_class rest = n;
  for (unsigned long p = 2; p < kTrialLimit; p += (p == 2 ? 1 : 2)) {
    if (mpz_cmp_ui(rest.get_mpz_t(), p * p) < 0) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      out.factors[mpz_class(p)] += 1;
    }
  }
  if (rest > 1) {
    std::mt19937_64 rng(0x5eed);
    factor_rec(rest, out, rng);
  }
  return out;
}

mpz_class euler_phi(const FactoredInt& n) {
  mpz_class phi = 1;
  for (const auto& [p, e] : n.factors) phi *= ipow(p, e - 1) * (p - 1);
  return phi;
}

int mobius(const FactoredInt& n) {
  for (const auto& [p, e] : n.factors)
    if (e >= 2) return 0;
  return n.factors.size() % 2 == 0 ? 1 : -1;
}

mpz_class count_squarefree_divisors(const FactoredInt& n) {
  mpz_class w;
  mpz_ui_pow_ui(w.get_mpz_t(), 2, n.factors.size());
  return w;
}

std::vector<mpz_class> divisors(const FactoredInt& n) {
  std::vector<mpz_class> out{1};
  for (const auto& [p, e] : n.factors) {
    const std::size_t base = out.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end(), MpzLess{});
  return out;
}

mpz_class primorial(unsigned e) {
  const std::uint64_t last = nth_prime(e);
  mpz_class prod = 1;
  for (std::uint64_t p : PrimeCache::instance().below(last + 1)) prod *= static_cast<unsigned long>(p);
  return prod;
}

std::uint64_t nth_prime(unsigned e) {
  if (e == 0) throw std::invalid_argument("nth_prime: index is 1-based");
  return PrimeCache::instance().nth(e);
}

std::uint64_t next_prime(std::uint64_t p) {
  std::uint64_t c = p + 1;
  while (!is_prime(c)) ++c;
  return c;
}

std::vector<std::uint64_t> primes_below(std::uint64_t limit) { return PrimeCache::instance().below(limit); }

mpz_class reduce_by_gcd(const mpz_class& a, const mpz_class& b) { return a / gcd(a, b); }

mpq_class lemma_sum(const mpz_class& R, const mpz_class& r) {
  mpq_class sum = 0;
  for (const mpz_class& d : divisors(factorize(R))) {
    const FactoredInt dr = factorize(reduce_by_gcd(d, r));
    const int mu = mobius(dr);
    if (mu == 0) continue;
    sum += mpq_class(euler_phi(factorize(d)), euler_phi(dr));
  }
  sum.canonicalize();
  return sum;
}

bool prime_power_decompose(std::uint64_t n, std::uint64_t& p, unsigned& s) {
  if (n < 2) return false;
  const FactoredInt f = factorize(n);
  if (f.factors.size() != 1) return false;
  p = f.factors.begin()->first.get_ui();
  s = f.factors.begin()->second;
  return true;
}

mpz_class ipow(const mpz_class& base, unsigned long exp) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

}  // namespace ffprog
