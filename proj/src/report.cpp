#include "ffprog/report.hpp"

#include <sstream>

namespace ffprog {

namespace {

Json pairs(const std::vector<std::pair<std::string, std::string>>& v) {
  Json o = Json::object();
  for (const auto& [k, x] : v) o[k] = x;
  return o;
}

std::vector<std::pair<std::string, std::string>> unpairs(const Json& o) {
  std::vector<std::pair<std::string, std::string>> v;
  for (auto it = o.begin(); it != o.end(); ++it) v.emplace_back(it.key(), it.value().get<std::string>());
  return v;
}

// null when the comparison was never reached
Json value(const BoundValue& v) {
  if (v.kind.empty()) return nullptr;
  return {{"kind", v.kind}, {"value", v.text}};
}

BoundValue value_from(const Json& j) {
  if (j.is_null()) return {};
  return {j.at("kind").get<std::string>(), j.at("value").get<std::string>()};
}

std::string join(const std::vector<mpz_class>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

Json to_json(const BoundReport& r) {
  return {{"kind", "bound_report"},
          {"criterion", r.criterion},
          {"comparison", r.comparison},
          {"lhs", value(r.lhs)},
          {"rhs", value(r.rhs)},
          {"verdict", r.verdict},
          {"precision", r.precision},
          {"inputs", pairs(r.inputs)},
          {"details", pairs(r.details)}};
}

BoundReport bound_report_from_json(const Json& j) {
  BoundReport r;
  r.criterion = j.at("criterion").get<std::string>();
  r.comparison = j.at("comparison").get<std::string>();
  r.lhs = value_from(j.at("lhs"));
  r.rhs = value_from(j.at("rhs"));
  r.verdict = j.at("verdict").get<bool>();
  r.precision = j.at("precision").get<std::string>();
  r.inputs = unpairs(j.at("inputs"));
  r.details = unpairs(j.at("details"));
  return r;
}

Json to_json(const SpecialSieveReport& r) {
  Json j = {{"kind", "special_sieve"},
            {"q", r.q},
            {"n", r.n},
            {"p0", r.p0},
            {"result", r.result},
            {"outcome", r.outcome}};
  j["w1"] = r.w1 ? Json(*r.w1) : Json(nullptr);
  j["w2"] = r.w2;
  j["l"] = r.ell.get_str();
  j["S"] = r.sums.S.get_str();
  j["u0"] = r.sums.u0;
  j["delta"] = r.delta.get_str();
  j["Delta"] = r.Delta.get_str();
  j["bound"] = to_json(r.bound);
  return j;
}

Json to_json(const FieldCtx& ctx, const ProgressionSpec& spec, const SearchReport& r) {
  Json w = Json::array();
  for (const auto& x : r.witnesses) {
    Json e = {{"alpha", ctx.format(x.alpha)}, {"position", x.position}};
    e["gamma"] = x.gamma ? Json(ctx.format(*x.gamma)) : Json(nullptr);
    w.push_back(e);
  }
  return {{"kind", "search_report"},
          {"q", ctx.q()},
          {"n", ctx.n()},
          {"m", spec.m},
          {"beta", ctx.format(spec.beta)},
          {"r", join(spec.r)},
          {"k", spec.k},
          {"f", to_string(spec.f)},
          {"mode", to_string(spec.mode)},
          {"count", r.counted ? Json(r.count) : Json(nullptr)},
          {"exhaustive", r.exhaustive},
          {"found", r.found()},
          {"witnesses", w}};
}

Json to_json(const FieldCtx& ctx, const FieldElem& a, const ElementProfile& p) {
  return {{"kind", "element_profile"},
          {"q", ctx.q()},
          {"n", ctx.n()},
          {"element", ctx.format(a)},
          {"order", p.order.get_str()},
          {"r", p.r_value.get_str()},
          {"fq_order", to_string(p.fq_order)},
          {"k", p.k_value}};
}

Json to_json(const WeilReport& r, const FieldCtx& ctx) {
  return {{"kind", "weil_report"},
          {"q", ctx.q()},
          {"n", ctx.n()},
          {"r", r.r},
          {"case_a", {{"sums", r.case_a_sums}, {"max", r.case_a_max}, {"bound", r.case_a_bound}, {"ok", r.case_a_ok}}},
          {"case_b",
           {{"sums", r.case_b_sums},
            {"max_error", r.case_b_max_error},
            {"preimage_checks", r.case_b_preimage_checks},
            {"ok", r.case_b_ok}}},
          {"cotaparaf", {{"sums", r.cotaparaf_sums}, {"max_ratio", r.cotaparaf_max_ratio}, {"ok", r.cotaparaf_ok}}},
          {"ok", r.ok()}};
}

Json to_json(const Section4Report& r) {
  Json steps = Json::array(), chain = Json::array();
  for (const auto& s : r.steps) steps.push_back({{"id", s.id}, {"claim", s.claim}, {"ok", s.ok}, {"values", pairs(s.values)}});
  for (const auto& c : r.chain)
    chain.push_back({{"p0", c.p0},
                     {"q_max", c.q_max},
                     {"threshold", c.threshold},
                     {"threshold_3t3", c.threshold_3t3},
                     {"t", c.t_at_max},
                     {"u", c.u_at_max},
                     {"Delta", c.Delta_at_max}});
  return {{"kind", "section4_replication"}, {"ok", r.ok()}, {"steps", steps}, {"chain", chain}};
}

Json to_json(const std::vector<SweepRow>& rows, bool with_elapsed) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json j = {{"q", r.q},   {"n", r.n},          {"beta", r.beta},   {"m", r.m},
              {"r", r.r},   {"k", r.k},          {"admissible", r.admissible}, {"status", r.status}};
    j["main_verdict"] = r.main_verdict ? Json(*r.main_verdict) : Json(nullptr);
    j["count"] = r.count ? Json(*r.count) : Json(nullptr);
    j["witness_found"] = r.witness_found;
    j["witness"] = r.witness;
    if (with_elapsed) j["elapsed_ms"] = r.elapsed_ms;
    arr.push_back(j);
  }
  return {{"kind", "sweep"}, {"rows", arr}};
}

SweepRow sweep_row_from_json(const Json& j) {
  SweepRow r;
  r.q = j.at("q").get<std::uint64_t>();
  r.n = j.at("n").get<unsigned>();
  r.beta = j.at("beta").get<std::string>();
  r.m = j.at("m").get<unsigned>();
  r.r = j.at("r").get<std::string>();
  r.k = j.at("k").get<unsigned>();
  r.admissible = j.at("admissible").get<bool>();
  r.status = j.at("status").get<std::string>();
  if (!j.at("main_verdict").is_null()) r.main_verdict = j.at("main_verdict").get<bool>();
  if (!j.at("count").is_null()) r.count = j.at("count").get<std::uint64_t>();
  r.witness_found = j.at("witness_found").get<bool>();
  r.witness = j.at("witness").get<std::string>();
  if (j.contains("elapsed_ms")) r.elapsed_ms = j.at("elapsed_ms").get<double>();
  return r;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "q,n,beta,m,r,k,admissible,status,main_verdict,count,witness_found,elapsed_ms\n";
  for (const auto& r : rows) {
    out << r.q << ',' << r.n << ',' << csv_field(r.beta) << ',' << r.m << ',' << csv_field(r.r) << ',' << r.k << ','
        << (r.admissible ? "true" : "false") << ',' << csv_field(r.status) << ','
        << (r.main_verdict ? (*r.main_verdict ? "true" : "false") : "") << ','
        << (r.count ? std::to_string(*r.count) : "") << ',' << (r.witness_found ? "true" : "false") << ','
        << r.elapsed_ms << '\n';
  }
  return out.str();
}

}  // namespace ffprog
