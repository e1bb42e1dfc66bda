#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsat/kernels.hpp"
#include "tsat/params.hpp"

namespace tsat {

// Loci of eq1 = 0 and eq2 = 0 as phi(beta1); NaN where no sign change.
struct CurvePoint {
  double beta1;
  double phi_eq1;
  double phi_eq2;
};

std::vector<CurvePoint> emit_curves(const ModelParams& params, int grid_density);
std::string curves_csv(const std::vector<CurvePoint>& pts);

struct EmpiricalRow {
  int x, p;
  double kappa;
  double mean_omega;
  double std_omega;
  double budget;  // large-deviation tolerance on |mean_omega - kappa|
  bool within_budget;
};

struct EmpiricalReport {
  int n = 0;
  double c = 0;
  int formulas = 0;
  int requested_formulas = 0;
  std::uint64_t seed = 0;
  double alpha = 1e-3;
  int x_cap = 8;
  bool partial = false;  // formulas cut to respect the work budget
  std::vector<EmpiricalRow> rows;
  double max_deviation = 0;
  bool within_budget = false;
  PpsCorpus pps;  // exhaustive PPS subreport at small n

  std::string csv() const;
  std::string summary() const;
};

// n * formulas above max_work variables truncates the formula count.
EmpiricalReport empirical_report(int n, double c, int formulas, std::uint64_t seed, Exec exec = Exec::parallel,
                                 long long max_work = 50'000'000, int pps_n = 12, int pps_formulas = 1000);

}  // namespace tsat
