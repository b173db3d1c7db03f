#include "ffprog/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "ffprog/classify.hpp"
#include "ffprog/error.hpp"

namespace ffprog {

const char* to_string(TargetMode mode) {
  switch (mode) {
    case TargetMode::AtPosition: return "at_position";
    case TargetMode::AnyPosition: return "any_position";
    case TargetMode::NoNormality: return "no_normality";
  }
  return "?";
}

void ProgressionSpec::validate() const {
  if (!ctx) throw Error(ErrorKind::InvalidSpec, "missing field context");
  const FieldCtx& F = *ctx;
  if (m < 1) throw Error(ErrorKind::InvalidSpec, "m must be positive");
  if (m > F.p()) throw Error(ErrorKind::InvalidSpec, "m must not exceed the characteristic");
  if (!F.is_valid(beta) || F.is_zero(beta)) throw Error(ErrorKind::InvalidSpec, "beta must be a nonzero element");
  if (r.size() != m) throw Error(ErrorKind::InvalidSpec, "expected " + std::to_string(m) + " values of r");
  const mpz_class& N = F.group_order().value;
  for (const mpz_class& ri : r)
    if (ri <= 0 || N % ri != 0) throw Error(ErrorKind::NotADivisor, "r = " + ri.get_str() + " does not divide " + N.get_str());
  if (!f.is_monic() || !factor_over(F, f)) throw Error(ErrorKind::NotADivisorPoly, "f must be a monic divisor of x^n - 1");
  if (f.degree() != static_cast<int>(k)) throw Error(ErrorKind::BadDegree, "deg f must equal k");
  if (mode == TargetMode::AtPosition && (position < 1 || position > m))
    throw Error(ErrorKind::BadPosition, "position must lie in [1, m]");
}

bool check_admissible(std::uint64_t q, unsigned n) {
  if (q % 2 == 0) return false;
  const mpz_class Q(static_cast<unsigned long>(q));
  mpz_class g = Q * Q * Q - Q;
  g = gcd(g, mpz_class(n));
  return g > 1;
}

std::vector<mpz_class> full_R(const ProgressionSpec& spec) {
  std::vector<mpz_class> R;
  for (const mpz_class& ri : spec.r) R.push_back(spec.ctx->group_order().value / ri);
  return R;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Runs fn(chunk_index, begin, end) over [0, total) in chunks; chunks are
// claimed in increasing order.
template <class Fn>
void for_chunks(std::uint64_t total, std::uint64_t chunk, unsigned workers, Fn&& fn) {
  const std::uint64_t chunks = total == 0 ? 0 : (total + chunk - 1) / chunk;
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) fn(c, c * chunk, std::min(total, (c + 1) * chunk));
  };
  workers = std::max(1u, workers);
  if (workers == 1 || chunks <= 1) {
    work();
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mu;
  for (unsigned w = 0; w < std::min<std::uint64_t>(workers, chunks); ++w)
    pool.emplace_back([&] {
      try {
        work();
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = chunks;
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// (R, r)-freeness at one position.
struct FreeTest {
  mpz_class M;                    // (q^n - 1)/r
  std::vector<mpz_class> cofactors;  // M / l
  std::uint64_t r = 1;
  std::vector<std::uint64_t> primes;  // primes of R

  FreeTest(const FieldCtx& F, const mpz_class& r_, const mpz_class& R) {
    const mpz_class& N = F.group_order().value;
    M = N / r_;
    r = r_.get_ui();
    for (const mpz_class& l : F.group_order().primes())
      if (R % l == 0) {
        primes.push_back(l.get_ui());
        cofactors.push_back(M / l);
      }
  }

  bool by_log(LogTable::Log t, LogTable::Log zero) const {
    if (t == zero || t % r != 0) return false;
    const std::uint64_t u = t / r;
    for (std::uint64_t l : primes)
      if (u % l == 0) return false;
    return true;
  }

  bool by_elem(const FieldCtx& F, const FieldElem& x) const {
    if (F.is_zero(x)) return false;
    const FieldElem one = F.one();
    if (!(F.pow(x, M) == one)) return false;
    for (const mpz_class& c : cofactors)
      if (F.pow(x, c) == one) return false;
    return true;
  }
};

void check_R(const ProgressionSpec& spec, const std::vector<mpz_class>& R) {
  if (R.size() != spec.m) throw Error(ErrorKind::InvalidSpec, "expected " + std::to_string(spec.m) + " values of R");
  const mpz_class& N = spec.ctx->group_order().value;
  for (unsigned i = 0; i < spec.m; ++i)
    if (R[i] <= 0 || (N / spec.r[i]) % R[i] != 0)
      throw Error(ErrorKind::NotADivisor, "R_" + std::to_string(i + 1) + " does not divide (q^n - 1)/r_" + std::to_string(i + 1));
}

void check_g(const ProgressionSpec& spec, const XnDivisor& g) {
  const XnFactorization& xn = spec.ctx->xn();
  bool ok = g.exps.size() == xn.factors.size();
  for (std::size_t i = 0; ok && i < g.exps.size(); ++i) ok = g.exps[i] <= xn.factors[i].multiplicity;
  if (!ok) throw Error(ErrorKind::NotADivisorPoly, "g does not divide x^n - 1");
}

const LogTable& counting_table(const FieldCtx& F, const SearchOptions& opts) {
  if (F.field_size() > mpz_class(static_cast<unsigned long>(opts.count_cap)))
    throw Error(ErrorKind::CapExceeded, "exhaustive counts need q^n <= " + std::to_string(opts.count_cap));
  if (!F.has_table()) throw Error(ErrorKind::CapExceeded, "exhaustive counts need a log table for this field");
  return F.table();
}

std::vector<LogTable::Log> shift_logs(const FieldCtx& F, const FieldElem& beta, unsigned m) {
  const LogTable& T = F.table();
  std::vector<LogTable::Log> out;
  FieldElem s = F.zero();
  for (unsigned i = 0; i < m; ++i) {
    out.push_back(T.log_of_index(F.index_of(s)));
    s = F.add(s, beta);
  }
  return out;
}

std::vector<FreeTest> free_tests(const ProgressionSpec& spec, const std::vector<mpz_class>& R) {
  std::vector<FreeTest> out;
  for (unsigned i = 0; i < spec.m; ++i) out.emplace_back(*spec.ctx, spec.r[i], R[i]);
  return out;
}

bool all_free_log(const LogTable& T, LogTable::Log a, const std::vector<LogTable::Log>& shifts,
                  const std::vector<FreeTest>& tests) {
  for (std::size_t i = 0; i < tests.size(); ++i)
    if (!tests[i].by_log(T.add(a, shifts[i]), T.zero())) return false;
  return true;
}

}  // namespace

SearchReport count_Nv(const ProgressionSpec& spec, unsigned v, const std::vector<mpz_class>& R, const XnDivisor& g,
                      const SearchOptions& opts) {
  const auto t0 = Clock::now();
  spec.validate();
  if (v < 1 || v > spec.m) throw Error(ErrorKind::BadPosition, "v must lie in [1, m]");
  check_R(spec, R);
  check_g(spec, g);
  const FieldCtx& F = *spec.ctx;
  const LogTable& T = counting_table(F, opts);
  const auto shifts = shift_logs(F, spec.beta, spec.m);
  const auto tests = free_tests(spec, R);
  const auto g_tests = g_free_tests(F, g);
  const LinearMap fmap = action_matrix(F, spec.f);
  const LogTable::Log back = shifts[v - 1];

  const std::uint64_t size = F.size_u64();
  const std::uint64_t chunks = (size + opts.chunk - 1) / opts.chunk;
  std::vector<std::uint64_t> partial(chunks, 0);
  for_chunks(size, opts.chunk, opts.workers, [&](std::uint64_t c, std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t cnt = 0;
    for (std::uint64_t gi = lo; gi < hi; ++gi) {
      const FieldElem gamma = F.element_at(gi);
      if (!passes(F.base(), g_tests, gamma)) continue;
      const LogTable::Log x = T.log_of_index(F.index_of(fmap.apply(F.base(), gamma)));
      const LogTable::Log alpha = T.sub(x, back);
      if (alpha == T.zero()) continue;
      if (all_free_log(T, alpha, shifts, tests)) ++cnt;
    }
    partial[c] = cnt;
  });
  SearchReport rep;
  rep.count = std::accumulate(partial.begin(), partial.end(), std::uint64_t(0));
  rep.exhaustive = true;
  rep.counted = true;
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

SearchReport count_N(const ProgressionSpec& spec, const std::vector<mpz_class>& R, const XnDivisor& g,
                     const SearchOptions& opts) {
  const auto t0 = Clock::now();
  spec.validate();
  check_R(spec, R);
  check_g(spec, g);
  const FieldCtx& F = *spec.ctx;
  const LogTable& T = counting_table(F, opts);
  const auto shifts = shift_logs(F, spec.beta, spec.m);
  const auto tests = free_tests(spec, R);
  const auto g_tests = g_free_tests(F, g);
  const LinearMap fmap = action_matrix(F, spec.f);
  const std::uint64_t size = F.size_u64();

  // Number of g-free γ with f ∘ γ = x, per index x.
  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> image(size, kNone);
  for_chunks(size, opts.chunk, opts.workers, [&](std::uint64_t, std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t gi = lo; gi < hi; ++gi) {
      const FieldElem gamma = F.element_at(gi);
      if (passes(F.base(), g_tests, gamma)) image[gi] = F.index_of(fmap.apply(F.base(), gamma));
    }
  });
  std::vector<std::uint32_t> preimages(size, 0);
  for (std::uint64_t x : image)
    if (x != kNone) ++preimages[x];

  const std::uint64_t N = size - 1;
  const std::uint64_t chunks = (N + opts.chunk - 1) / opts.chunk;
  std::vector<std::uint64_t> partial(chunks, 0);
  for_chunks(N, opts.chunk, opts.workers, [&](std::uint64_t c, std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t cnt = 0;
    for (std::uint64_t t = lo; t < hi; ++t) {
      const auto alpha = static_cast<LogTable::Log>(t);
      if (!all_free_log(T, alpha, shifts, tests)) continue;
      for (unsigned v = 0; v < spec.m; ++v) cnt += preimages[T.index_of_log(T.add(alpha, shifts[v]))];
    }
    partial[c] = cnt;
  });
  SearchReport rep;
  rep.count = std::accumulate(partial.begin(), partial.end(), std::uint64_t(0));
  rep.exhaustive = true;
  rep.counted = true;
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

namespace {

// Ord(x) = (x^n - 1)/f, i.e. x = f ∘ γ for some normal γ.
struct TargetTest {
  LinearMap kill;
  std::vector<LinearMap> live;

  TargetTest(const FieldCtx& F, const PolyFq& f) {
    const XnFactorization& xn = F.xn();
    const XnDivisor fd = *factor_over(F, f);
    const XnDivisor quot = complement(xn, fd);
    kill = action_matrix(F, divisor_poly(F, quot));
    for (std::size_t i = 0; i < quot.exps.size(); ++i) {
      if (quot.exps[i] == 0) continue;
      XnDivisor less = quot;
      --less.exps[i];
      live.push_back(action_matrix(F, divisor_poly(F, less)));
    }
  }

  bool operator()(const BaseField& B, const FieldElem& x) const { return kill.kills(B, x) && passes(B, live, x); }
};

}  // namespace

std::optional<Witness> find_progression(const ProgressionSpec& spec, const SearchOptions& opts) {
  spec.validate();
  const FieldCtx& F = *spec.ctx;
  if (F.field_size() > mpz_class(static_cast<unsigned long>(opts.search_cap)))
    throw Error(ErrorKind::CapExceeded, "search needs q^n <= " + std::to_string(opts.search_cap));
  const std::vector<mpz_class> R = full_R(spec);
  const auto tests = free_tests(spec, R);
  const bool normal = spec.mode != TargetMode::NoNormality;
  std::optional<TargetTest> target;
  std::vector<LinearMap> normal_tests;
  LinearMap fmap;
  if (normal) {
    target.emplace(F, spec.f);
    normal_tests = g_free_tests(F, full_divisor(F.xn()));
    fmap = action_matrix(F, spec.f);
  }
  std::vector<FieldElem> shifts;
  {
    FieldElem s = F.zero();
    for (unsigned i = 0; i < spec.m; ++i) {
      shifts.push_back(s);
      s = F.add(s, spec.beta);
    }
  }
  const bool logs = F.has_table();
  std::vector<LogTable::Log> shift_log;
  if (logs) shift_log = shift_logs(F, spec.beta, spec.m);

  // Position v (0-based) whose member is a valid target, if any.
  auto pick_position = [&](const FieldElem& alpha) -> std::optional<unsigned> {
    if (!normal) return 0u;
    for (unsigned v = 0; v < spec.m; ++v) {
      if (spec.mode == TargetMode::AtPosition && v + 1 != spec.position) continue;
      if ((*target)(F.base(), F.add(alpha, shifts[v]))) return v;
    }
    return std::nullopt;
  };

  const std::uint64_t N = F.size_u64() - 1;
  const std::uint64_t chunks = (N + opts.chunk - 1) / opts.chunk;
  std::vector<std::optional<Witness>> found(chunks);
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  for_chunks(N, opts.chunk, opts.workers, [&](std::uint64_t c, std::uint64_t lo, std::uint64_t hi) {
    if (lo > best.load()) return;
    std::optional<FieldElem> alpha;
    if (!logs) alpha = F.pow(F.generator(), mpz_class(static_cast<unsigned long>(lo)));
    for (std::uint64_t t = lo; t < hi; ++t) {
      if (t > lo && !logs) *alpha = F.mul(*alpha, F.generator());
      bool ok;
      if (logs) {
        const LogTable& T = F.table();
        ok = all_free_log(T, static_cast<LogTable::Log>(t), shift_log, tests);
      } else {
        ok = true;
        for (unsigned i = 0; ok && i < spec.m; ++i) ok = tests[i].by_elem(F, F.add(*alpha, shifts[i]));
      }
      if (!ok) continue;
      const FieldElem a = logs ? F.element_at(F.table().index_of_log(static_cast<LogTable::Log>(t))) : *alpha;
      const auto v = pick_position(a);
      if (!v) continue;
      Witness w;
      w.alpha = a;
      w.alpha_log = t;
      if (normal) {
        w.position = *v + 1;
        w.gamma = free_preimage(F, fmap, F.add(a, shifts[*v]), normal_tests);
        if (!w.gamma) throw std::logic_error("target member has no normal preimage");
      }
      found[c] = std::move(w);
      std::uint64_t cur = best.load();
      while (t < cur && !best.compare_exchange_weak(cur, t)) {
      }
      return;
    }
  });
  for (auto& w : found)
    if (w) return w;
  return std::nullopt;
}

SearchReport search_report(const ProgressionSpec& spec, const SearchOptions& opts) {
  const auto t0 = Clock::now();
  SearchReport rep;
  if (auto w = find_progression(spec, opts)) {
    rep.witnesses.push_back(std::move(*w));
  } else {
    rep.exhaustive = true;
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

bool validate_witness(const ProgressionSpec& spec, const Witness& w) {
  const FieldCtx& F = *spec.ctx;
  FieldElem x = w.alpha;
  for (unsigned i = 0; i < spec.m; ++i) {
    if (F.is_zero(x) || !is_r_primitive(F, x, spec.r[i])) return false;
    x = F.add(x, spec.beta);
  }
  if (spec.mode == TargetMode::NoNormality) return true;
  if (w.position < 1 || w.position > spec.m || !w.gamma) return false;
  if (spec.mode == TargetMode::AtPosition && w.position != spec.position) return false;
  FieldElem target = w.alpha;
  for (unsigned i = 1; i < w.position; ++i) target = F.add(target, spec.beta);
  if (!(module_action(F, spec.f, *w.gamma) == target)) return false;
  if (!is_g_free(F, *w.gamma, full_divisor(F.xn()))) return false;
  return k_normality(F, target) == spec.k;
}

}  // namespace ffprog
