#include "tsat/monotone.hpp"

#include <algorithm>
#include <cmath>

#include "tsat/errors.hpp"
#include "tsat/numeric.hpp"
#include "tsat/stationarity.hpp"

namespace tsat {

namespace {

void require_above_one(double V) {
  if (!(V > 1)) throw DomainError("V must exceed 1");
}

}  // namespace

double R_fixed_phi(double V) {
  require_above_one(V);
  double s = std::sqrt(V * (V - 1));
  return (3 * V * V - 1 + 3 * V * s) / (3 * V + 1);
}

double R_fixed_phi_derivative(double V) {
  require_above_one(V);
  double s = std::sqrt(V * (V - 1));
  double ds = (2 * V - 1) / (2 * s);
  double N = 3 * V * V - 1 + 3 * V * s;
  double dN = 6 * V + 3 * s + 3 * V * ds;
  return (dN * (3 * V + 1) - 3 * N) / ((3 * V + 1) * (3 * V + 1));
}

double S_fixed_beta(double V) {
  require_above_one(V);
  double g = std::sqrt(V * (V - 1)) + 2 - V;
  return 0.5 + 3 * (V - 1) / g;
}

double S_fixed_beta_derivative(double V) {
  require_above_one(V);
  double s = std::sqrt(V * (V - 1));
  double g = s + 2 - V;
  double dg = (2 * V - 1) / (2 * s) - 1;
  return 3 * (g - (V - 1) * dg) / (g * g);
}

double S_fixed_beta_unfactored(double V) {
  require_above_one(V);
  return 0.5 + 3 * (V - 1) / (3 * V - 4) * (V - 2 + std::sqrt(V * (V - 1)));
}

Tangent tangent_R(double V0) {
  double a = R_fixed_phi_derivative(V0);
  return {a, R_fixed_phi(V0) - a * V0};
}

Tangent tangent_S(double V0) {
  double a = S_fixed_beta_derivative(V0);
  return {a, S_fixed_beta(V0) - a * V0};
}

double Vfrac(int p, double V) {
  if (p < 1) throw DomainError("Vfrac: p >= 1");
  require_above_one(V);
  double num = 0, den = 0, vk = 1;
  for (int k = 0; k < p; ++k) {
    num += (k + 1) * vk;
    den += vk;
    vk *= V;
  }
  return num / (den * den);
}

double Vfrac_unfactored(int p, double V) {
  double vp = std::pow(V, p);
  return (p * vp * V - (p + 1) * vp + 1) / ((vp - 1) * (vp - 1));
}

double V_min1(const AprioriBounds& b) {
  return 1 + b.beta2_min * b.beta2_min / (3 * (3 * b.phi_max - b.beta1_min) * b.beta3_max);
}

double U_max1(const AprioriBounds& b) {
  return 9 * (1 - b.phi_min) * b.beta3_max / ((3 * b.phi_min - b.beta1_max) * b.beta2_min);
}

double U_max2(const AprioriBounds& b) {
  double y = 3 * b.phi_min - b.beta1_max;
  return 3 * (1 - b.phi_min) * b.beta2_max / (y * y);
}

double V_min2(const AprioriBounds& b) {
  return 1 + b.beta2_min * b.beta2_min / (3 * b.beta3_max * (2 * b.beta2_min + 3 * b.beta3_max));
}

double UV_max2(const AprioriBounds& b) {
  double s = b.beta2_min + 3 * b.beta3_max;
  return 9 * (2 * (1 - b.beta3_max) - b.beta2_min) * b.beta3_max * b.beta3_max / (b.beta2_min * s * s);
}

std::vector<PolygonPoint> polygon_vertices(const AprioriBounds& b) {
  std::vector<PolygonPoint> poly = {
      {b.phi_min, b.beta1_min}, {b.phi_max, b.beta1_min}, {b.phi_max, b.beta1_max}, {b.phi_min, b.beta1_max}};
  // Half-planes u phi + v beta1 <= w.
  struct HalfPlane {
    double u, v, w;
  };
  const HalfPlane planes[] = {
      {3, 2, 3 - b.beta2_min},    // beta2 >= beta2_min
      {-3, -2, b.beta2_max - 3},  // beta2 <= beta2_max
      {-3, -1, -2 - b.beta3_min}, // beta3 >= beta3_min
      {3, 1, 2 + b.beta3_max},    // beta3 <= beta3_max
  };
  for (const auto& h : planes) {
    std::vector<PolygonPoint> out;
    auto f = [&](const PolygonPoint& q) { return h.u * q.phi + h.v * q.beta1 - h.w; };
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const auto& a = poly[i];
      const auto& c = poly[(i + 1) % poly.size()];
      double fa = f(a), fc = f(c);
      if (fa <= 0) out.push_back(a);
      if ((fa < 0 && fc > 0) || (fa > 0 && fc < 0)) {
        double t = fa / (fa - fc);
        out.push_back({a.phi + t * (c.phi - a.phi), a.beta1 + t * (c.beta1 - a.beta1)});
      }
    }
    poly = std::move(out);
  }
  return poly;
}

PolygonExtremum polygon_extremize(const AprioriBounds& b, PolygonTarget target, int samples_per_edge) {
  PolygonExtremum r{};
  double beta = 1 - b.beta2_min - b.beta3_max;
  r.witness = {(2 + b.beta3_max - beta) / 3, beta};
  r.value = target == PolygonTarget::V_min ? V_min2(b) : UV_max2(b);
  auto eval = [&](double phi, double b1) {
    auto pt = derive<double>(phi, b1);
    return target == PolygonTarget::V_min ? pt.V : pt.U / pt.V;
  };
  auto poly = polygon_vertices(b);
  double best = target == PolygonTarget::V_min ? INFINITY : -INFINITY;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& c = poly[(i + 1) % poly.size()];
    for (int k = 0; k <= samples_per_edge; ++k) {
      double t = double(k) / samples_per_edge;
      double v = eval(a.phi + t * (c.phi - a.phi), a.beta1 + t * (c.beta1 - a.beta1));
      best = target == PolygonTarget::V_min ? std::min(best, v) : std::max(best, v);
    }
  }
  r.sampled = best;
  r.agree = std::fabs(r.sampled - r.value) <= 1e-7;
  return r;
}

double A_sum(double V_low, double UV_high, const Weights<double>& w) {
  CompensatedSum s;
  for (int x = 2; x <= w.x_max; ++x)
    for (int p = 1; 2 * p <= x; ++p) {
      double e = std::pow(UV_high, x - 2 * p);
      s.add(p * w.kt[tri(x, p)] * Vfrac(p, V_low) * (e / (1 + e)));
    }
  return s.value();
}

double B_sum(double a, double b, double V_low, const Weights<double>& w) {
  if (!(a > std::fabs(b))) throw DomainError("B_sum: need a > |b|");
  CompensatedSum s;
  for (int x = 3; x <= w.x_max; ++x)
    for (int p = 1; 2 * p + 1 <= x; ++p)
      s.add(p * (x - 2 * p) * w.kt[tri(x, p)] * (a * V_low - std::fabs(b)) / (4 * (std::pow(V_low, p) - 1)));
  return s.value();
}

MonotoneCertificate eq2_monotone_verdict(FixedVariable which, const ModelParams& params, const Weights<double>& w) {
  const auto& bounds = params.a_priori;
  const double v_low = V_min2(bounds), uv_high = UV_max2(bounds);
  MonotoneCertificate cert;
  cert.name = which == FixedVariable::phi ? "eq2_fixed_phi" : "eq2_fixed_beta1";
  cert.tangent = which == FixedVariable::phi ? tangent_R(v_low) : tangent_S(v_low);
  cert.A_terms.assign(tri_size(w.x_max), 0.0);
  cert.B_terms.assign(tri_size(w.x_max), 0.0);
  for (int x = 2; x <= w.x_max; ++x)
    for (int p = 1; 2 * p <= x; ++p) {
      double e = std::pow(uv_high, x - 2 * p);
      cert.A_terms[tri(x, p)] = p * w.kt[tri(x, p)] * Vfrac(p, v_low) * (e / (1 + e));
      if (x >= 2 * p + 1)
        cert.B_terms[tri(x, p)] = p * (x - 2 * p) * w.kt[tri(x, p)] *
                                  (cert.tangent.a * v_low - std::fabs(cert.tangent.b)) /
                                  (4 * (std::pow(v_low, p) - 1));
    }
  cert.A_bound = A_sum(v_low, uv_high, w);
  cert.B_bound = B_sum(cert.tangent.a, cert.tangent.b, v_low, w);
  cert.extra_bound = which == FixedVariable::beta1 ? params.lambda * (1 - bounds.beta1_min) / 16 : 0.0;
  cert.total = cert.A_bound + cert.B_bound + cert.extra_bound;
  cert.threshold = params.lambda * bounds.phi_min;
  cert.target = which == FixedVariable::phi ? 6.125 : 6.103;
  cert.verdict = cert.total + kDeltaNum < cert.threshold;
  return cert;
}

double beta1_star(double phi) { return std::sqrt(3.0) - 3 * (std::sqrt(3.0) - 1) * phi; }

double phi_star(double b) {
  return (15 - 9 / (2 - b) - 2 * b - std::sqrt(3.0) * (1 - b) * std::sqrt(4 * b * b + 4 * b + 3) / (2 - b)) / 12;
}

UVStar UV_star(double b) {
  const double A = 9 - std::sqrt(3.0) * std::sqrt(3 + 4 * b + 4 * b * b);
  const double B = 4 - 2 * b;
  UVStar r{};
  r.V = 4.0 / 3.0 * A * A / ((A - B) * (A + 3 * B));
  const double N = 2 * A * b * b * b + 6 * A * b * b + 21 * A * b - A + 4 * b * b * b * b + 24 * b * b * b -
                   6 * b * b - 122 * b + 12;
  const double Dn = A * b * b + 10 * A * b + 3 * A + 6 * b * b * b + 12 * b * b - 30 * b - 36;
  r.UoverV = 3 * N / (4 * (b - 1) * Dn);
  r.U = r.UoverV * r.V;
  return r;
}

double eq1_star_majorant(const ModelParams& params, const Weights<double>& w) {
  const auto& bd = params.a_priori;
  const double q = 1.5 * std::sqrt(3.0) * (1 - bd.phi_max) / (3 * bd.phi_max - 1);
  const double h = std::sqrt(3.0) / 2;
  CompensatedSum s;
  for (int x = 4; x <= w.x_max; ++x)
    for (int p = 1; 2 * p + 2 <= x; ++p) {
      int k = x - 2 * p;
      double e = std::pow(q, k) * (1 - std::pow(h, p));
      s.add(w.kt[tri(x, p)] * k * (e / (1 + e)));
    }
  return w.K_tilde - w.lambda * bd.phi_min - s.value();
}

double M_bound(double b1_low, double b1_high, const Weights<double>& w) {
  const double uv = UV_star(b1_low).UoverV;
  const double vs = UV_star(b1_high).V;
  CompensatedSum s;
  for (int x = 5; x <= w.x_max; ++x)
    for (int p = 1; 2 * p + 3 <= x; ++p) {
      int k = x - 2 * p;
      double e = std::pow(uv, k) * (1 - std::pow(1 / vs, p));
      s.add(w.kt[tri(x, p)] * k * (e / (1 + e)));
    }
  return w.K_tilde - w.lambda * phi_star(b1_high) - s.value();
}

std::vector<double> band_edges(const ModelParams& params) {
  const auto& b = params.a_priori;
  if (params.c == 4.506 && b.beta1_min < 0.39 && b.beta1_max > 0.468) return {b.beta1_min, 0.39, 0.428, 0.468, b.beta1_max};
  std::vector<double> edges;
  const int bands = 8;
  for (int i = 0; i <= bands; ++i) edges.push_back(b.beta1_min + (b.beta1_max - b.beta1_min) * i / bands);
  return edges;
}

MonotoneReport monotone_analysis(const ModelParams& params, const Weights<double>& w) {
  MonotoneReport r;
  r.v_min = polygon_extremize(params.a_priori, PolygonTarget::V_min);
  r.uv_max = polygon_extremize(params.a_priori, PolygonTarget::UoverV_max);
  r.eq2.push_back(eq2_monotone_verdict(FixedVariable::phi, params, w));
  r.eq2.push_back(eq2_monotone_verdict(FixedVariable::beta1, params, w));
  r.eq1_star = eq1_star_majorant(params, w);
  auto edges = band_edges(params);
  const bool published_bands = edges.size() == 5 && params.c == 4.506;
  const double targets[] = {-0.051, -0.051, -0.062, -0.055};
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    BandCheck bc{};
    bc.b1_low = edges[i];
    bc.b1_high = edges[i + 1];
    bc.value = M_bound(bc.b1_low, bc.b1_high, w);
    bc.target = published_bands ? targets[i] : 0.0;
    bc.verdict = bc.value + kDeltaNum < 0;
    r.bands.push_back(bc);
  }
  r.verdict = r.v_min.agree && r.uv_max.agree && r.eq1_star + kDeltaNum < 0;
  for (const auto& c : r.eq2) r.verdict = r.verdict && c.verdict;
  for (const auto& b : r.bands) r.verdict = r.verdict && b.verdict;
  return r;
}

}  // namespace tsat
