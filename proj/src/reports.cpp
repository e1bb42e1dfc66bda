#include "tsat/reports.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "tsat/distribution.hpp"
#include "tsat/errors.hpp"
#include "tsat/formula.hpp"
#include "tsat/large_deviation.hpp"
#include "tsat/stationarity.hpp"

namespace tsat {

namespace {

// Zero of a function decreasing in phi on [lo, hi]; NaN without a sign change.
double phi_root(const Weights<double>& w, double beta1, double lo, double hi, bool second) {
  auto f = [&](double phi) {
    PhiBetaPoint pt;
    static_cast<BasicPoint<double>&>(pt) = derive<double>(phi, beta1);
    return second ? eq2(pt, w) : eq1(pt, w);
  };
  double flo, fhi;
  try {
    flo = f(lo);
    fhi = f(hi);
  } catch (const DomainError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (!(flo > 0 && fhi < 0)) return std::numeric_limits<double>::quiet_NaN();
  for (int it = 0; it < 100; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

}  // namespace

std::vector<CurvePoint> emit_curves(const ModelParams& params, int grid_density) {
  if (grid_density < 2) throw DomainError("emit_curves: grid_density must be at least 2");
  const Weights<double> w = make_weights<double>(params);
  const AprioriBounds& b = params.a_priori;
  std::vector<CurvePoint> out;
  for (int k = 0; k < grid_density; ++k) {
    const double beta = b.beta1_min + (b.beta1_max - b.beta1_min) * k / (grid_density - 1);
    // Nonsingular phi range at this beta1: beta3 > 0 and beta2 > 0.
    const double lo = std::max(b.phi_min, (2 - beta) / 3 + 1e-9);
    const double hi = std::min(b.phi_max, 1 - 2 * beta / 3 - 1e-9);
    CurvePoint cp{beta, std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    if (lo < hi) {
      cp.phi_eq1 = phi_root(w, beta, lo, hi, false);
      cp.phi_eq2 = phi_root(w, beta, lo, hi, true);
    }
    out.push_back(cp);
  }
  return out;
}

std::string curves_csv(const std::vector<CurvePoint>& pts) {
  std::ostringstream os;
  os << "beta1,phi_eq1,phi_eq2\n";
  for (const auto& p : pts) os << fmt(p.beta1) << ',' << fmt(p.phi_eq1) << ',' << fmt(p.phi_eq2) << '\n';
  return os.str();
}

EmpiricalReport empirical_report(int n, double c, int formulas, std::uint64_t seed, Exec exec, long long max_work,
                                 int pps_n, int pps_formulas) {
  EmpiricalReport r;
  r.n = n;
  r.c = c;
  r.seed = seed;
  r.requested_formulas = formulas;
  r.formulas = formulas;
  if (static_cast<long long>(n) * formulas > max_work) {
    r.formulas = static_cast<int>(std::max<long long>(1, max_work / n));
    r.partial = true;
  }
  const OmegaCensus census = omega_census(n, c, r.formulas, seed, r.x_cap, exec);
  const int cells = tri_size(r.x_cap);
  const double samples = double(n) * r.formulas;
  r.within_budget = true;
  for (int x = 0; x <= r.x_cap; ++x)
    for (int p = 0; p <= x; ++p) {
      EmpiricalRow row;
      row.x = x;
      row.p = p;
      row.kappa = kappa(x, p, 3 * c);
      row.mean_omega = census.mean(x, p);
      row.std_omega = census.stddev(x, p);
      row.budget = ld_budget(row.kappa, samples, r.alpha, cells);
      const double dev = std::fabs(row.mean_omega - row.kappa);
      row.within_budget = dev < row.budget;
      r.max_deviation = std::max(r.max_deviation, dev);
      r.within_budget = r.within_budget && row.within_budget;
      r.rows.push_back(row);
    }
  r.pps = pps_corpus_census(pps_n, clause_count(pps_n, c), pps_formulas, seed, exec);
  return r;
}

std::string EmpiricalReport::csv() const {
  std::ostringstream os;
  os << "x,p,kappa,mean_omega,std_omega,n,formulas,seed,ld_budget,within_budget\n";
  for (const auto& r : rows)
    os << r.x << ',' << r.p << ',' << fmt(r.kappa) << ',' << fmt(r.mean_omega) << ',' << fmt(r.std_omega) << ','
       << n << ',' << formulas << ',' << seed << ',' << fmt(r.budget) << ',' << (r.within_budget ? 1 : 0) << '\n';
  return os.str();
}

std::string EmpiricalReport::summary() const {
  std::ostringstream os;
  os << "n=" << n << " c=" << c << " formulas=" << formulas << (partial ? " (partial, work budget)" : "")
     << " seed=" << seed << "\n";
  os << "max |mean omega - kappa| over x<=" << x_cap << ": " << fmt(max_deviation)
     << (within_budget ? " within" : " NOT within") << " the large-deviation budget at confidence " << 1 - alpha
     << "\n";
  os << "PPS corpus n=" << pps.n << " m=" << pps.m << " formulas=" << pps.formulas
     << ": satisfiable=" << pps.satisfiable << " satisfiable_without_pps=" << pps.satisfiable_without_pps
     << " pps_total=" << pps.pps_total << " flip_failures=" << pps.flip_failures
     << " pure_negative_violations=" << pps.pure_negative_violations << "\n";
  return os.str();
}

}  // namespace tsat
