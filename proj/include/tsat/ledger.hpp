#pragma once

#include <limits>
#include <string>
#include <vector>

#include "tsat/distribution.hpp"
#include "tsat/params.hpp"

namespace tsat {

enum class Direction { upper, lower };
enum class Arithmetic { float_mode, interval_mode };

const char* to_string(Direction d);
const char* to_string(Arithmetic a);

inline constexpr double kNoTarget = std::numeric_limits<double>::quiet_NaN();

struct LedgerEntry {
  std::string symbol;
  std::string formula;
  double value = 0;
  Direction direction = Direction::upper;
  double target = kNoTarget;  // value must stay below target when set

  bool has_target() const { return target == target; }
  bool passes() const { return !has_target() || value < target; }
};

// (2 eta)^(-2 eta), for 0 < eta <= 0.05.
double L_fn(double eta);
double log_L(double eta);

double R1(double eps, int x_max, double lambda_max);
double R2(double eps, int x_max, double lambda_max);
double R3(double eps, int x_max, double lambda_min, double lambda_max);

// beta1 += 3 R3, beta2 += 9 R3, beta3 += 6 R3, phi += R3, each endpoint outward.
AprioriBounds widen_intervals(const AprioriBounds& gamma, double r3);

// Natural logs of the slack factors (upper bounds).
struct GFactors {
  double log_G1 = 0;
  double log_GA = 0;
  double log_GB = 0;
  double log_GC = 0;
  double log_G2 = 0;
};

GFactors g_factors(const ModelParams& params, Arithmetic mode = Arithmetic::float_mode);

struct ErrorBudget {
  Arithmetic mode = Arithmetic::float_mode;
  double R1 = 0, R2 = 0, R3 = 0;
  GFactors g;
  double log_prefactor = 0;    // log(G1 G2 exp(2 eps D / e))
  double log_unbalancing = 0;  // (rho + eps Delta) log 2
  AprioriBounds widened{};
  std::vector<LedgerEntry> entries;

  // Every factor finite and >= 1 (logs >= 0); gates the verdict.
  bool sound() const;
  // Every entry below its published target; reported, not gating.
  bool all_pass() const;
};

ErrorBudget compute_ledger(const Tables& tables, Arithmetic mode = Arithmetic::float_mode);

}  // namespace tsat
