#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tsat/ledger.hpp"
#include "tsat/monotone.hpp"
#include "tsat/params.hpp"
#include "tsat/root_box.hpp"

namespace tsat {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// eq1/eq2 closures over precomputed weights; enclosures are set when wi is given.
// The weights must outlive the returned pair.
EquationPair stationarity_equations(const Weights<double>& w, const Weights<Interval>* wi = nullptr);

struct StageResult {
  std::string name;
  bool ok = false;
  std::string message;
};

struct Certificate {
  ModelParams params;
  Arithmetic mode = Arithmetic::float_mode;
  double width_target = 1e-7;
  ErrorBudget ledger;
  MonotoneReport monotone;
  ExclusionTrace trace;
  VerifyResult verify;
  Rectangle rectangle{};
  ReferenceRoot root;             // sanity oracle only
  double log_majorant = 0;        // corner majorant of the log rate on the rectangle
  double log_rate = 0;            // plus log prefactor and log unbalancing
  double rate = 0;                // exp(log_rate), upper direction
  std::vector<StageResult> stages;
  std::vector<std::string> assumptions;
  std::string failing_stage;
  std::string timestamp;
  bool verdict = false;
};

// Stages: tables, ledger, monotone, spiral, verify, rate. Stage failures set
// verdict = false and name the stage; ConfigError from invalid parameters
// propagates.
Certificate certify(double c, int x_max, double eps, Arithmetic mode = Arithmetic::float_mode,
                    double width_target = 1e-7);

nlohmann::json to_json(const Certificate& cert);

struct ReplayResult {
  bool trace_ok = false;
  double rate = 0;
  bool verdict = false;
  bool matches = false;  // recomputed verdict and rate agree with the stored ones
  std::string message;
};

// Re-verifies the stored trace and recomputes the rate on the stored
// rectangle using the stored prefactors.
ReplayResult replay(const nlohmann::json& j);

// 17 significant digits.
std::string decimal_string(double v);

}  // namespace tsat
