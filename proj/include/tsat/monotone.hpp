#pragma once

#include <string>
#include <vector>

#include "tsat/distribution.hpp"
#include "tsat/params.hpp"

namespace tsat {

// Closed forms bounding -V(V-1)/V' times (U'/U - V'/V), one variable fixed.
double R_fixed_phi(double V);
double R_fixed_phi_derivative(double V);
// Evaluated through the factorization V - 2 + sqrt(V(V-1)) = (3V-4)/(sqrt(V(V-1)) + 2 - V),
// which removes the apparent singularity at V = 4/3.
double S_fixed_beta(double V);
double S_fixed_beta_derivative(double V);
// The unfactored expression, singular at 4/3; kept for cross-checks.
double S_fixed_beta_unfactored(double V);

struct Tangent {
  double a;
  double b;
  double at(double V) const { return a * V + b; }
};
Tangent tangent_R(double V0);
Tangent tangent_S(double V0);

// (p V^(p+1) - (p+1) V^p + 1)/(V^p - 1)^2 via sum (k+1) V^k / (sum V^k)^2, k < p.
double Vfrac(int p, double V);
double Vfrac_unfactored(int p, double V);

// Crude and tight polygon bounds on U and V.
double V_min1(const AprioriBounds& b);
double U_max1(const AprioriBounds& b);
double U_max2(const AprioriBounds& b);  // bound on U (V - 1)
double V_min2(const AprioriBounds& b);
double UV_max2(const AprioriBounds& b);

struct PolygonPoint {
  double phi;
  double beta1;
};

// Vertices of the feasible polygon (box intersected with the beta2/beta3 strips).
std::vector<PolygonPoint> polygon_vertices(const AprioriBounds& b);

enum class PolygonTarget { V_min, UoverV_max };

struct PolygonExtremum {
  double value;          // analytic vertex formula
  PolygonPoint witness;  // the (beta3 = max, beta2 = min) vertex
  double sampled;        // extremum over densely sampled polygon boundary
  bool agree;            // |value - sampled| <= 1e-7
};

PolygonExtremum polygon_extremize(const AprioriBounds& b, PolygonTarget target, int samples_per_edge = 20000);

double A_sum(double V_low, double UV_high, const Weights<double>& w);
// Needs a > |b|; throws DomainError otherwise.
double B_sum(double a, double b, double V_low, const Weights<double>& w);

enum class FixedVariable { phi, beta1 };

struct MonotoneCertificate {
  std::string name;
  double A_bound = 0;
  double B_bound = 0;
  double extra_bound = 0;
  double total = 0;
  double threshold = 0;
  double target = 0;  // published bound on the total
  Tangent tangent{};
  std::vector<double> A_terms;  // per tri(x, p)
  std::vector<double> B_terms;
  bool verdict = false;
};

MonotoneCertificate eq2_monotone_verdict(FixedVariable which, const ModelParams& params, const Weights<double>& w);

double beta1_star(double phi);
double phi_star(double beta1);

struct UVStar {
  double U;
  double V;
  double UoverV;
};
UVStar UV_star(double beta1);

// Eq1 without the x = 2p+1 terms, majorised at beta1*(phi) over the phi range.
double eq1_star_majorant(const ModelParams& params, const Weights<double>& w);
double M_bound(double b1_low, double b1_high, const Weights<double>& w);

struct BandCheck {
  double b1_low, b1_high, value, target;
  bool verdict;
};

struct MonotoneReport {
  std::vector<MonotoneCertificate> eq2;
  double eq1_star = 0;
  std::vector<BandCheck> bands;
  PolygonExtremum v_min, uv_max;
  bool verdict = false;
};

// Band edges covering [beta1_min, beta1_max].
std::vector<double> band_edges(const ModelParams& params);

MonotoneReport monotone_analysis(const ModelParams& params, const Weights<double>& w);

}  // namespace tsat
