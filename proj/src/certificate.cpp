#include "tsat/certificate.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "tsat/distribution.hpp"
#include "tsat/errors.hpp"
#include "tsat/stationarity.hpp"

namespace tsat {

using nlohmann::json;

std::string decimal_string(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

EquationPair stationarity_equations(const Weights<double>& w, const Weights<Interval>* wi) {
  EquationPair e;
  e.eq1 = [&w](double phi, double b) {
    PhiBetaPoint pt;
    static_cast<BasicPoint<double>&>(pt) = derive<double>(phi, b);
    return eq1(pt, w);
  };
  e.eq2 = [&w](double phi, double b) {
    PhiBetaPoint pt;
    static_cast<BasicPoint<double>&>(pt) = derive<double>(phi, b);
    return eq2(pt, w);
  };
  if (wi) {
    e.eq1_enclosure = [wi](double phi, double b) { return eq1_enclosure(phi, b, *wi); };
    e.eq2_enclosure = [wi](double phi, double b) { return eq2_enclosure(phi, b, *wi); };
  }
  return e;
}

namespace {

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double majorant(const Rectangle& r, const ModelParams& params, Arithmetic mode) {
  if (mode == Arithmetic::interval_mode) return log_rate_majorant<Interval>(r, make_weights<Interval>(params));
  return log_rate_majorant<double>(r, make_weights<double>(params));
}

}  // namespace

Certificate certify(double c, int x_max, double eps, Arithmetic mode, double width_target) {
  Certificate cert;
  cert.params = ModelParams::make(c, x_max, eps);
  cert.mode = mode;
  cert.width_target = width_target;
  cert.timestamp = utc_now();
  cert.assumptions = {
      "Pr(SAT) for the ordered-clauses model is nonincreasing in the clause density c; the bound at c = 4.506 "
      "therefore extends to every larger c. Invoked, not verified.",
      "The eq1/eq2 sign structure on the domain (separate monotonicity) is granted by the monotone stage; the "
      "rectangle excludes common roots only under it."};

  auto stage = [&](const std::string& name, bool ok, const std::string& msg) {
    cert.stages.push_back({name, ok, msg});
    if (!ok && cert.failing_stage.empty()) cert.failing_stage = name;
    return ok;
  };

  const Tables tables = build_tables(cert.params);  // ConfigError propagates
  stage("tables", true, "D=" + std::to_string(tables.consts.D) + " N=" + std::to_string(tables.consts.N));

  cert.ledger = compute_ledger(tables, mode);
  stage("ledger", cert.ledger.sound(),
        cert.ledger.all_pass() ? "all factors finite, >= 1 and below targets"
                               : (cert.ledger.sound() ? "sound; some published targets not met"
                                                      : "a factor is not finite or below 1"));

  const Weights<double> w = make_weights<double>(cert.params);
  const Weights<Interval> wi = mode == Arithmetic::interval_mode ? make_weights<Interval>(cert.params)
                                                                  : Weights<Interval>{};
  try {
    cert.monotone = monotone_analysis(cert.params, w);
    stage("monotone", cert.monotone.verdict, cert.monotone.verdict ? "all monotonicity bounds hold"
                                                                     : "a monotonicity bound failed");
  } catch (const std::exception& e) {
    stage("monotone", false, e.what());
  }

  const EquationPair eqs = stationarity_equations(w, mode == Arithmetic::interval_mode ? &wi : nullptr);
  const Rectangle domain = domain_of(cert.params.a_priori);
  bool have_trace = false;
  try {
    cert.trace = spiral_localize(eqs, domain, width_target, kDeltaNum, 1000, mode == Arithmetic::interval_mode);
    cert.rectangle = cert.trace.rectangle();
    have_trace = true;
    const bool reached = cert.rectangle.phi_width() <= width_target && cert.rectangle.beta_width() <= width_target;
    stage("spiral", true, cert.trace.diagnostic + (reached ? "" : " (target width not reached)"));
  } catch (const std::exception& e) {
    stage("spiral", false, e.what());
  }

  if (have_trace) {
    cert.verify = verify_exclusion(cert.trace, eqs, mode == Arithmetic::interval_mode);
    stage("verify", cert.verify.ok, cert.verify.ok ? "all sign checks hold with margin" : cert.verify.message);
    try {
      cert.root = solve_reference(eqs, cert.rectangle);
    } catch (const std::exception& e) {
      cert.root.message = e.what();
    }
    try {
      cert.log_majorant = majorant(cert.rectangle, cert.params, mode);
      cert.log_rate = cert.log_majorant + cert.ledger.log_prefactor + cert.ledger.log_unbalancing;
      cert.rate = std::exp(cert.log_rate);
      if (mode == Arithmetic::interval_mode) cert.rate = upper(exp(Interval(cert.log_rate)));
      std::ostringstream os;
      os.precision(12);
      os << "rate " << cert.rate;
      stage("rate", cert.rate < 1, os.str());
    } catch (const std::exception& e) {
      stage("rate", false, e.what());
    }
  }

  cert.verdict = cert.failing_stage.empty();
  for (const auto& s : cert.stages) cert.verdict = cert.verdict && s.ok;
  return cert;
}

namespace {

json num(double v, Direction d) { return {{"value", decimal_string(v)}, {"direction", to_string(d)}}; }
json num(double v) { return decimal_string(v); }

json seq(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(decimal_string(x));
  return a;
}

double parse(const json& j) {
  if (j.is_object()) return std::stod(j.at("value").get<std::string>());
  return std::stod(j.get<std::string>());
}

std::vector<double> parse_seq(const json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(parse(x));
  return out;
}

json rect_json(const Rectangle& r) {
  return {{"phi_lo", num(r.phi_lo)}, {"phi_hi", num(r.phi_hi)}, {"beta1_lo", num(r.beta_lo)},
          {"beta1_hi", num(r.beta_hi)}};
}

}  // namespace

json to_json(const Certificate& c) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["provenance"] = {{"version", kVersion},
                     {"timestamp", c.timestamp},
                     {"arithmetic", to_string(c.mode)},
                     {"seed", nullptr}};
  const auto& b = c.params.a_priori;
  j["params"] = {{"c", num(c.params.c)},
                 {"lambda", num(c.params.lambda)},
                 {"x_max", c.params.x_max},
                 {"epsilon", num(c.params.epsilon)},
                 {"c_min", num(c.params.c_min)},
                 {"c_max", num(c.params.c_max)},
                 {"width_target", num(c.width_target)},
                 {"a_priori",
                  {{"beta1", {num(b.beta1_min), num(b.beta1_max)}},
                   {"beta2", {num(b.beta2_min), num(b.beta2_max)}},
                   {"beta3", {num(b.beta3_min), num(b.beta3_max)}},
                   {"phi", {num(b.phi_min), num(b.phi_max)}}}}};

  json ledger = json::array();
  for (const auto& e : c.ledger.entries) {
    json x = {{"symbol", e.symbol}, {"formula", e.formula}, {"value", num(e.value, e.direction)}};
    if (e.has_target()) {
      x["target"] = num(e.target);
      x["margin"] = num(e.target - e.value);
      x["passes"] = e.passes();
    }
    ledger.push_back(x);
  }
  j["ledger"] = {{"arithmetic", to_string(c.ledger.mode)},
                 {"entries", ledger},
                 {"log_prefactor", num(c.ledger.log_prefactor, Direction::upper)},
                 {"log_unbalancing", num(c.ledger.log_unbalancing, Direction::upper)},
                 {"sound", c.ledger.sound()},
                 {"all_targets_met", c.ledger.all_pass()}};

  json mono = json::array();
  for (const auto& m : c.monotone.eq2)
    mono.push_back({{"name", m.name},
                    {"A", num(m.A_bound, Direction::upper)},
                    {"B", num(m.B_bound, Direction::upper)},
                    {"extra", num(m.extra_bound, Direction::upper)},
                    {"total", num(m.total, Direction::upper)},
                    {"threshold", num(m.threshold, Direction::lower)},
                    {"target", num(m.target)},
                    {"tangent", {num(m.tangent.a), num(m.tangent.b)}},
                    {"verdict", m.verdict}});
  json bands = json::array();
  for (const auto& bc : c.monotone.bands)
    bands.push_back({{"beta1_low", num(bc.b1_low)},
                     {"beta1_high", num(bc.b1_high)},
                     {"M", num(bc.value, Direction::upper)},
                     {"target", num(bc.target)},
                     {"verdict", bc.verdict}});
  j["monotone"] = {{"eq2", mono},
                   {"eq1_star", num(c.monotone.eq1_star, Direction::upper)},
                   {"bands", bands},
                   {"V_min2", num(c.monotone.v_min.value, Direction::lower)},
                   {"UV_max2", num(c.monotone.uv_max.value, Direction::upper)},
                   {"verdict", c.monotone.verdict}};

  json checks = json::array();
  for (const auto& s : c.verify.checks)
    checks.push_back({{"index", s.index},
                      {"family", to_string(s.family)},
                      {"phi", num(s.phi)},
                      {"beta1", num(s.beta1)},
                      {"equation", s.equation},
                      {"value", num(s.value)},
                      {"margin", num(s.margin)}});
  j["trace"] = {{"domain", rect_json(c.trace.domain)},
                {"phi_minus", seq(c.trace.phi_minus)},
                {"beta_plus", seq(c.trace.beta_plus)},
                {"phi_plus", seq(c.trace.phi_plus)},
                {"beta_minus", seq(c.trace.beta_minus)},
                {"K", c.trace.K()},
                {"L", c.trace.L()},
                {"diagnostic", c.trace.diagnostic},
                {"sign_checks", checks},
                {"verified", c.verify.ok}};
  j["rectangle"] = rect_json(c.rectangle);
  j["reference_root"] = {{"phi", num(c.root.phi)},
                         {"beta1", num(c.root.beta1)},
                         {"residual1", num(c.root.residual1)},
                         {"residual2", num(c.root.residual2)},
                         {"found", c.root.found},
                         {"note", "sanity oracle, not part of the certificate chain"}};
  j["log_majorant"] = num(c.log_majorant, Direction::upper);
  j["log_rate"] = num(c.log_rate, Direction::upper);
  j["rate"] = num(c.rate, Direction::upper);
  j["n_dependent_factor"] = "(6 n^3)^(1/n), excluded from rate";
  json stages = json::array();
  for (const auto& s : c.stages) stages.push_back({{"name", s.name}, {"ok", s.ok}, {"message", s.message}});
  j["stages"] = stages;
  j["failing_stage"] = c.failing_stage.empty() ? json(nullptr) : json(c.failing_stage);
  j["assumptions"] = c.assumptions;
  j["verdict"] = c.verdict;
  return j;
}

ReplayResult replay(const json& j) {
  ReplayResult r;
  if (j.value("schema_version", 0) != kSchemaVersion) {
    r.message = "unsupported schema version";
    return r;
  }
  const json& p = j.at("params");
  const ModelParams params = ModelParams::make(parse(p.at("c")), p.at("x_max").get<int>(), parse(p.at("epsilon")));
  const Arithmetic mode = j.at("provenance").at("arithmetic").get<std::string>() == to_string(Arithmetic::interval_mode)
                              ? Arithmetic::interval_mode
                              : Arithmetic::float_mode;
  const json& t = j.at("trace");
  ExclusionTrace trace;
  const json& d = t.at("domain");
  trace.domain = {parse(d.at("phi_lo")), parse(d.at("phi_hi")), parse(d.at("beta1_lo")), parse(d.at("beta1_hi"))};
  trace.phi_minus = parse_seq(t.at("phi_minus"));
  trace.beta_plus = parse_seq(t.at("beta_plus"));
  trace.phi_plus = parse_seq(t.at("phi_plus"));
  trace.beta_minus = parse_seq(t.at("beta_minus"));

  const Weights<double> w = make_weights<double>(params);
  const Weights<Interval> wi = mode == Arithmetic::interval_mode ? make_weights<Interval>(params) : Weights<Interval>{};
  const EquationPair eqs = stationarity_equations(w, mode == Arithmetic::interval_mode ? &wi : nullptr);
  try {
    r.trace_ok = verify_exclusion(trace, eqs, mode == Arithmetic::interval_mode).ok;
  } catch (const StructuralError& e) {
    r.message = e.what();
    return r;
  }
  const Rectangle rect = trace.rectangle();
  const double log_rate = majorant(rect, params, mode) + parse(j.at("ledger").at("log_prefactor")) +
                          parse(j.at("ledger").at("log_unbalancing"));
  r.rate = mode == Arithmetic::interval_mode ? upper(exp(Interval(log_rate))) : std::exp(log_rate);

  bool stages_ok = true;
  for (const auto& s : j.at("stages"))
    if (s.at("name") != "verify" && s.at("name") != "rate") stages_ok = stages_ok && s.at("ok").get<bool>();
  r.verdict = stages_ok && r.trace_ok && r.rate < 1;
  const double stored = parse(j.at("rate"));
  r.matches = r.verdict == j.at("verdict").get<bool>() && std::fabs(r.rate - stored) <= 1e-15 * std::fabs(stored);
  r.message = r.matches ? "replay reproduces the stored verdict" : "replay disagrees with the stored certificate";
  return r;
}

}  // namespace tsat
