#include "ffprog/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "ffprog/error.hpp"
#include "ffprog/report.hpp"

namespace ffprog::cli {

namespace {

struct FieldArgs {
  std::uint64_t q = 0, p = 0;
  unsigned s = 1, n = 1;
};

struct SpecArgs {
  unsigned m = 1;
  std::string beta = "1";
  std::string r;
  unsigned k = 0;
  std::string f = "auto-k";
  bool no_normality = false;
  unsigned position = 0;
};

struct Common {
  std::string format = "json";
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::uint64_t search_cap = 100'000'000;
  std::uint64_t count_cap = 2'000'000;
  std::uint64_t char_cap = 3000;
  std::string config;
};

std::vector<mpz_class> parse_ints(const std::string& text) {
  std::vector<mpz_class> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    mpz_class z;
    if (item.empty() || z.set_str(item, 10) != 0 || z <= 0)
      throw CLI::ValidationError("expected a comma-separated list of positive integers, got '" + text + "'");
    v.push_back(z);
  }
  return v;
}

std::vector<std::uint64_t> parse_coeffs(const std::string& text) {
  std::vector<std::uint64_t> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw CLI::ValidationError("bad coefficient list '" + text + "'");
    v.push_back(std::stoull(item));
  }
  return v;
}

void add_field(CLI::App* app, FieldArgs& f) {
  app->add_option("--q", f.q, "Base field size (prime power)");
  app->add_option("--p", f.p, "Characteristic");
  app->add_option("--s", f.s, "Degree of F_q over F_p")->check(CLI::PositiveNumber);
  app->add_option("--n", f.n, "Extension degree of F_{q^n} over F_q")->check(CLI::PositiveNumber);
}

void add_spec(CLI::App* app, SpecArgs& s) {
  app->add_option("--m", s.m, "Progression length")->check(CLI::PositiveNumber);
  app->add_option("--beta", s.beta, "Common difference: '1' or coefficients c0,c1,...");
  app->add_option("--r", s.r, "r_1,...,r_m (default all 1)");
  app->add_option("--k", s.k, "Normality degree");
  app->add_option("--f", s.f, "auto-k or coefficients of f, low to high");
  app->add_flag("--no-normality", s.no_normality, "Only the r_i-primitivity constraints");
  app->add_option("--position", s.position, "Require the k-normal member at this 1-based position");
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app->add_option("--seed", c.seed, "Seed for moduli and generator");
  app->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
  app->add_option("--search-cap", c.search_cap, "Largest q^n for witness search")->check(CLI::PositiveNumber);
  app->add_option("--count-cap", c.count_cap, "Largest q^n for exhaustive counts")->check(CLI::PositiveNumber);
  app->add_option("--char-cap", c.char_cap, "Largest q^n for character tables")->check(CLI::PositiveNumber);
  app->add_option("--config", c.config, "File of key = value lines presetting any flag");
}

FieldRef build_field(const FieldArgs& a, const Common& c) {
  FieldOptions fo;
  fo.seed = c.seed;
  if (a.q) return make_field_q(a.q, a.n, fo);
  if (!a.p) throw CLI::ValidationError("one of --q or --p is required");
  return make_field(a.p, a.s, a.n, fo);
}

SearchOptions search_options(const Common& c) {
  SearchOptions o;
  o.workers = c.workers;
  o.search_cap = c.search_cap;
  o.count_cap = c.count_cap;
  return o;
}

std::vector<mpz_class> r_list(const SpecArgs& s) {
  if (s.r.empty()) return std::vector<mpz_class>(s.m, 1);
  auto r = parse_ints(s.r);
  if (r.size() == 1 && s.m > 1) r.resize(s.m, r[0]);
  if (r.size() != s.m) throw CLI::ValidationError("--r needs exactly m values");
  return r;
}

ProgressionSpec build_spec(const FieldRef& ctx, const SpecArgs& s) {
  ProgressionSpec spec;
  spec.ctx = ctx;
  spec.m = s.m;
  spec.beta = ctx->parse(s.beta);
  spec.r = r_list(s);
  spec.k = s.k;
  std::optional<std::vector<std::uint64_t>> coeffs;
  if (s.f != "auto-k") coeffs = parse_coeffs(s.f);
  spec.f = select_f(*ctx, s.k, coeffs);
  if (s.no_normality) spec.mode = TargetMode::NoNormality;
  else if (s.position) spec.mode = TargetMode::AtPosition, spec.position = s.position;
  spec.validate();
  return spec;
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

void emit(std::ostream& out, const Json& j, const std::string& format) {
  if (format == "json") {
    out << j.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> kv;
  flatten(j, "", kv);
  if (format == "csv") out << "key,value\n";
  for (const auto& [k, v] : kv) {
    if (format == "csv") {
      const bool quote = v.find_first_of(",\"\n") != std::string::npos;
      std::string esc;
      for (char ch : v) esc += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      out << k << ',' << (quote ? "\"" + esc + "\"" : v) << '\n';
    } else {
      out << k << ": " << v << '\n';
    }
  }
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string x) {
      const auto b = x.find_first_not_of(" \t\r"), e = x.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    if (!key.empty()) kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

void preset(CLI::App& app, const std::string& key, const std::string& value) {
  for (CLI::App* sub : app.get_subcommands({}))
    if (CLI::Option* opt = sub->get_option_no_throw("--" + key)) opt->default_str(value)->default_val(value);
}

std::optional<std::string> config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arithmetic progressions of r-primitive, k-normal elements in finite fields"};
  app.require_subcommand(1);
  Common c;
  FieldArgs fa;
  SpecArgs sa;

  auto* classify = app.add_subcommand("classify", "Profile one element of F_{q^n}");
  std::string element = "generator";
  add_field(classify, fa);
  add_common(classify, c);
  classify->add_option("--element", element, "Coefficients c0,c1,... or 'generator'");

  auto* search = app.add_subcommand("search", "Find or count progressions");
  bool count = false;
  add_field(search, fa);
  add_spec(search, sa);
  add_common(search, c);
  search->add_flag("--count", count, "Exhaustive count of N with R_i = (q^n-1)/r_i, g = x^n - 1");

  auto* bounds = app.add_subcommand("bounds", "Main or asymptotic existence criterion");
  std::string criterion = "main";
  unsigned N = 3, e = 265;
  std::optional<unsigned> w_gtilde;
  bounds->add_option("--criterion", criterion, "main or asymptotic")->check(CLI::IsMember({"main", "asymptotic"}));
  add_field(bounds, fa);
  add_spec(bounds, sa);
  add_common(bounds, c);
  bounds->add_option("--N", N, "Asymptotic parameter N");
  bounds->add_option("--e", e, "Asymptotic parameter e");
  bounds->add_option("--w-gtilde", w_gtilde, "Number of irreducible factors of (x^n - 1)/f");

  auto* sieve = app.add_subcommand("sieve", "Special sieve procedure and the sieve criterion it induces");
  std::uint64_t p0 = 2, p0_limit = 1000;
  bool p0_scan = false;
  add_field(sieve, fa);
  add_common(sieve, c);
  sieve->add_option("--p0", p0, "Sieving prime");
  sieve->add_flag("--p0-scan", p0_scan, "Try primes p0 below --p0-limit, first success wins");
  sieve->add_option("--p0-limit", p0_limit, "Scan limit");

  auto* sweep_cmd = app.add_subcommand("sweep", "Search over a (q, n) grid");
  std::uint64_t q_min = 3, q_max = 3;
  unsigned n_min = 1, n_max = 1;
  bool odd_only = false, no_criterion = false, skip_inadm = false;
  std::string beta_policy = "one";
  add_spec(sweep_cmd, sa);
  add_common(sweep_cmd, c);
  sweep_cmd->add_option("--q-min", q_min);
  sweep_cmd->add_option("--q-max", q_max);
  sweep_cmd->add_option("--n-min", n_min)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
  sweep_cmd->add_flag("--odd-only", odd_only, "Odd prime powers only");
  sweep_cmd->add_flag("--count", count, "Also count N exhaustively");
  sweep_cmd->add_flag("--no-criterion", no_criterion, "Skip the main criterion column");
  sweep_cmd->add_flag("--skip-inadmissible", skip_inadm, "Skip rows failing the admissibility filter");
  sweep_cmd->add_option("--beta-policy", beta_policy)->check(CLI::IsMember({"one", "fixed", "all"}));

  auto* sec4 = app.add_subcommand("replicate-sec4", "Recompute the q >= 79, n >= 13 numeric pipeline");
  add_common(sec4, c);

  auto* chars = app.add_subcommand("verify-chars", "Character-sum bound spot checks");
  std::string rs = "1";
  add_field(chars, fa);
  add_common(chars, c);
  chars->add_option("--rs", rs, "Values of r to check, comma-separated");

  try {
    const char* envs[][2] = {{"FFPROG_WORKERS", "workers"},
                             {"FFPROG_SEARCH_CAP", "search-cap"},
                             {"FFPROG_COUNT_CAP", "count-cap"},
                             {"FFPROG_CHAR_CAP", "char-cap"}};
    for (auto& [var, key] : envs)
      if (const char* v = std::getenv(var)) preset(app, key, v);
    if (auto path = config_path(args))
      for (const auto& [k, v] : read_config(*path))
        if (k != "config") preset(app, k, v);

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kTrue;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kTrue;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*classify) {
      FieldRef F = build_field(fa, c);
      FieldElem a = element == "generator" ? F->generator() : F->parse(element);
      emit(out, to_json(*F, a, profile(*F, a)), c.format);
      return kTrue;
    }
    if (*search) {
      FieldRef F = build_field(fa, c);
      ProgressionSpec spec = build_spec(F, sa);
      SearchOptions so = search_options(c);
      SearchReport rep;
      if (count) {
        rep = count_N(spec, full_R(spec), full_divisor(F->xn()), so);
        if (auto w = find_progression(spec, so)) rep.witnesses = {*w};
      } else {
        rep = search_report(spec, so);
      }
      emit(out, to_json(*F, spec, rep), c.format);
      return rep.found() ? kTrue : kFalse;
    }
    if (*bounds) {
      const std::uint64_t q = fa.q ? fa.q : [&] {
        std::uint64_t v = 1;
        for (unsigned i = 0; i < fa.s; ++i) v *= fa.p;
        return v;
      }();
      if (!q) throw CLI::ValidationError("one of --q or --p is required");
      const auto r = r_list(sa);
      BoundReport rep;
      if (criterion == "asymptotic") {
        rep = asymptotic_criterion(q, fa.n, sa.m, sa.k, r, N, e);
      } else if (w_gtilde) {
        rep = main_criterion(q, fa.n, sa.m, sa.k, r, *w_gtilde);
      } else if (sa.k == 0 && sa.f == "auto-k") {
        rep = main_criterion(q, fa.n, sa.m, 0, r, static_cast<unsigned>(xn_factor_shape(q, fa.n).distinct()));
      } else {
        if (ipow(mpz_class(static_cast<unsigned long>(q)), fa.n) >= mpz_class(1UL << 63))
          throw CLI::ValidationError("q^n >= 2^63: pass --w-gtilde, the factor count of (x^n - 1)/f");
        FieldOptions fo;
        fo.seed = c.seed;
        fo.find_generator = false;
        fo.table_cap = 0;
        FieldRef F = make_field_q(q, fa.n, fo);
        std::optional<std::vector<std::uint64_t>> coeffs;
        if (sa.f != "auto-k") coeffs = parse_coeffs(sa.f);
        rep = main_criterion(*F, sa.m, r, select_f(*F, sa.k, coeffs));
      }
      emit(out, to_json(rep), c.format);
      return rep.verdict ? kTrue : kFalse;
    }
    if (*sieve) {
      const std::uint64_t q = fa.q ? fa.q : fa.p;
      if (!q) throw CLI::ValidationError("one of --q or --p is required");
      SpecialSieveReport rep = p0_scan ? special_sieve_scan(q, fa.n, p0_limit) : special_sieve_report(q, fa.n, p0);
      BoundReport b = rep.bound;
      b.details.emplace_back("outcome", rep.outcome);
      if (rep.result) {
        const BoundReport induced = sieve_criterion(q, fa.n, 3, 2, {2, 2, 2}, induced_sieve_plan(rep), *rep.w1);
        b.details.emplace_back("induced_sieve_criterion", induced.verdict ? "true" : "false");
      }
      emit(out, to_json(b), c.format);
      return rep.result ? kTrue : kFalse;
    }
    if (*sweep_cmd) {
      SweepTemplate t;
      t.m = sa.m;
      if (!sa.r.empty()) t.r = r_list(sa);
      t.k = sa.k;
      if (sa.f != "auto-k") t.f = parse_coeffs(sa.f);
      if (sa.no_normality) t.mode = TargetMode::NoNormality;
      else if (sa.position) t.mode = TargetMode::AtPosition, t.position = sa.position;
      t.beta_policy = beta_policy == "one" ? BetaPolicy::One : beta_policy == "fixed" ? BetaPolicy::Fixed : BetaPolicy::AllNonzero;
      t.beta = sa.beta;
      t.count = count;
      t.criterion = !no_criterion;
      t.skip_inadmissible = skip_inadm;
      t.seed = c.seed;
      const auto rows = sweep(sweep_grid(q_min, q_max, n_min, n_max, odd_only), t, search_options(c));
      if (c.format == "csv") out << sweep_csv(rows);
      else emit(out, to_json(rows), c.format);
      bool all = true;
      for (const auto& row : rows)
        if (row.status != "skipped" && !row.witness_found) all = false;
      return all ? kTrue : kFalse;
    }
    if (*sec4) {
      Section4Config cfg;
      cfg.throw_on_mismatch = false;
      const Section4Report rep = replicate_section4(cfg);
      emit(out, to_json(rep), c.format);
      for (const auto& s : rep.steps)
        if (!s.ok) err << "replication mismatch at step " << s.id << ": " << s.claim << '\n';
      return rep.ok() ? kTrue : kFalse;
    }
    if (*chars) {
      FieldRef F = build_field(fa, c);
      CharacterTables t(F, c.char_cap);
      Json reports = Json::array();
      bool ok = true;
      for (const mpz_class& r : parse_ints(rs)) {
        const WeilReport w = check_weil_bounds(t, r.get_ui());
        ok = ok && w.ok();
        reports.push_back(to_json(w, *F));
      }
      emit(out, Json{{"kind", "weil_reports"}, {"reports", reports}}, c.format);
      return ok ? kTrue : kFalse;
    }
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace ffprog::cli
