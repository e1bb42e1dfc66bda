#include "tsat/stationarity.hpp"

#include <cmath>

#include "tsat/errors.hpp"
#include "tsat/numeric.hpp"

namespace tsat {

namespace {

template <class T>
struct Powers {
  std::vector<T> r;     // (U/V)^k
  std::vector<T> vinv;  // V^-p
};

template <class T>
Powers<T> powers(const T& U, const T& V, int x_max) {
  Powers<T> pw;
  pw.r.resize(x_max + 1);
  pw.vinv.resize(x_max / 2 + 1);
  T r = U / V;
  T vi = T(1.0) / V;
  pw.r[0] = T(1.0);
  for (int k = 1; k <= x_max; ++k) pw.r[k] = pw.r[k - 1] * r;
  pw.vinv[0] = T(1.0);
  for (int p = 1; p <= x_max / 2; ++p) pw.vinv[p] = pw.vinv[p - 1] * vi;
  return pw;
}

template <class T>
Powers<T> powers(const BasicPoint<T>& pt, int x_max) {
  return powers(pt.U, pt.V, x_max);
}

// sum kt log(U^(x-2p)(V^p - 1) + V^(x-p)), each term rescaled by V^(x-p).
template <class T>
T product_sum(const T& U, const T& V, const Weights<T>& w) {
  using std::log;
  using std::log1p;
  auto pw = powers(U, V, w.x_max);
  T lv = log(V);
  Accumulator<T> s;
  for (int x = 0; x <= w.x_max; ++x)
    for (int p = 0; 2 * p <= x; ++p) {
      int k = x - 2 * p;
      T E = pw.r[k] * (T(1.0) - pw.vinv[p]);
      s.add(w.kt[tri(x, p)] * (T(double(x - p)) * lv + log1p(E)));
    }
  return s.value();
}

void require_V(double v_lower) {
  if (!(v_lower > 1.0)) throw DomainError("V must exceed 1");
}

template <class T>
T xlogx_t(const T& y) {
  using std::log;
  return y * log(y);
}

// Candidate with the largest upper endpoint.
template <class T>
T pick_max(std::initializer_list<T> cands) {
  T best = *cands.begin();
  for (const T& c : cands)
    if (upper(c) > upper(best)) best = c;
  return best;
}

}  // namespace

template <class T>
BasicPoint<T> derive(T phi, T beta1) {
  BasicPoint<T> pt;
  pt.phi = phi;
  pt.beta1 = beta1;
  pt.beta2 = T(3.0) * (T(1.0) - phi) - T(2.0) * beta1;
  pt.beta3 = beta1 - T(2.0) + T(3.0) * phi;
  pt.X = T(3.0) * phi - T(1.0);
  pt.Y = T(3.0) * phi - beta1;
  pt.Z = T(1.0) - beta1;
  if (!(lower(pt.beta2) > 0) || !(lower(pt.beta3) > 0) || !(lower(pt.Y) > 0) || !(lower(T(1.0) - phi) > 0))
    throw SingularPointError("U and V undefined: beta2, beta3, 3phi - beta1 and 1 - phi must be positive");
  pt.U = T(9.0) * (T(1.0) - phi) * pt.beta3 / (pt.Y * pt.beta2);
  pt.V = T(1.0) + pt.beta2 * pt.beta2 / (T(3.0) * pt.Y * pt.beta3);
  return pt;
}

template BasicPoint<double> derive<double>(double, double);
template BasicPoint<Interval> derive<Interval>(Interval, Interval);

PhiBetaPoint derive_point(double phi, double beta1, const ModelParams& params) {
  PhiBetaPoint pt;
  static_cast<BasicPoint<double>&>(pt) = derive<double>(phi, beta1);
  pt.feasible = params.a_priori.contains(phi, beta1);
  return pt;
}

double V_alternate(const PhiBetaPoint& pt) {
  double t = pt.beta1 + 6 * pt.phi - 3;
  return t * t / (3 * pt.beta3 * pt.Y);
}

double h_weight(int x, int p, int j) {
  if (j < p) return std::exp(log_binomial(p, j));
  return std::exp(log_binomial(x - p, j - p));
}

namespace {

double log_h(int x, int p, int j) { return j < p ? log_binomial(p, j) : log_binomial(x - p, j - p); }

void check_mu_args(int x, int p, int j) {
  if (p < 0 || 2 * p > x || j < 0 || j > x) throw DomainError("mu: need 0 <= 2p <= x and 0 <= j <= x");
}

// mu with denominators divided by V^(x-p): E = (U/V)^k (1 - V^-p).
double mu_from(int x, int p, int j, double logU, double logV, double logVm1) {
  int k = x - 2 * p;
  double logE_base = k * (logU - logV);
  double E = p == 0 ? 0.0 : std::exp(logE_base) * -std::expm1(-p * logV);
  double log_den = std::log1p(E);
  if (j < p) return std::exp(log_h(x, p, j) + logE_base + (p - j) * logVm1 - p * logV - log_den);
  return std::exp(log_h(x, p, j) + (j - p) * logVm1 - (x - p) * logV - log_den);
}

}  // namespace

double mu_closed_form(int x, int p, int j, const PhiBetaPoint& pt) {
  check_mu_args(x, p, j);
  require_V(pt.V);
  return mu_from(x, p, j, std::log(pt.U), std::log(pt.V), std::log(pt.V - 1));
}

double alpha_closed_form(int x, int p, const PhiBetaPoint& pt) {
  check_mu_args(x, p, 0);
  require_V(pt.V);
  if (p == 0) return 0.0;
  double E = std::pow(pt.U / pt.V, x - 2 * p) * -std::expm1(-p * std::log(pt.V));
  return E / (1 + E);
}

MuTable::MuTable(int x_max) : x_max_(x_max), offsets_(tri_size(x_max), -1) {
  int off = 0;
  for (int x = 0; x <= x_max; ++x)
    for (int p = 0; 2 * p <= x; ++p) {
      offsets_[tri(x, p)] = off;
      off += x + 1;
    }
  values_.assign(off, 0.0);
}

double MuTable::alpha(int x, int p) const {
  CompensatedSum s;
  for (int j = 0; j < p; ++j) s.add(at(x, p, j));
  return s.value();
}

MuTable mu_table(const PhiBetaPoint& pt, int x_max) {
  require_V(pt.V);
  MuTable mu(x_max);
  double lu = std::log(pt.U), lv = std::log(pt.V), lvm = std::log(pt.V - 1);
  for (int x = 0; x <= x_max; ++x)
    for (int p = 0; 2 * p <= x; ++p)
      for (int j = 0; j <= x; ++j) mu.at(x, p, j) = mu_from(x, p, j, lu, lv, lvm);
  return mu;
}

template <class T>
T eq1_value(const BasicPoint<T>& pt, const Weights<T>& w, SumRange range, Eq1Variant variant) {
  require_V(lower(pt.V));
  auto pw = powers(pt, w.x_max);
  Accumulator<T> s;
  for (int x = 1; x <= w.x_max; ++x)
    for (int p = 1; 2 * p <= x; ++p) {
      int k = x - 2 * p;
      if (k == 0 && range == SumRange::strict) continue;
      if (k == 1 && variant != Eq1Variant::full) continue;
      if (k == 2 && variant == Eq1Variant::star_star) continue;
      T E = pw.r[k] * (T(1.0) - pw.vinv[p]);
      s.add(w.kt[tri(x, p)] * T(double(k)) * E / (T(1.0) + E));
    }
  return w.K_tilde - w.lambda * pt.phi - s.value();
}

template <class T>
T eq2_value(const BasicPoint<T>& pt, const Weights<T>& w) {
  require_V(lower(pt.V));
  auto pw = powers(pt, w.x_max);
  Accumulator<T> s;
  for (int x = 2; x <= w.x_max; ++x)
    for (int p = 1; 2 * p <= x; ++p) {
      int k = x - 2 * p;
      T E = pw.r[k] * (T(1.0) - pw.vinv[p]);
      // p kt (V-1)/(V(V^p-1)) [1 - 1/D] with the (V^p - 1) factor cancelled
      s.add(T(double(p)) * w.kt[tri(x, p)] * pw.r[k] * pw.vinv[p] / (T(1.0) + E));
    }
  T f = (pt.V - T(1.0)) / pt.V;
  return -pt.beta1 * w.c + w.lambda * pt.phi * f + f * s.value();
}

template <class T>
T eq2_direct_value(const BasicPoint<T>& pt, const Weights<T>& w) {
  require_V(lower(pt.V));
  auto pw = powers(pt, w.x_max);
  Accumulator<T> s;
  for (int x = 0; x <= w.x_max; ++x)
    for (int p = 0; 2 * p <= x; ++p) {
      int k = x - 2 * p;
      T E = pw.r[k] * (T(1.0) - pw.vinv[p]);
      s.add(w.kt[tri(x, p)] * (T(double(p)) * pw.r[k] + T(double(x - p))) / (T(1.0) + E));
    }
  return -pt.beta1 * w.c + (pt.V - T(1.0)) / pt.V * s.value();
}

template <class T>
T log_g2_value(const BasicPoint<T>& pt, const Weights<T>& w) {
  using std::log;
  require_V(lower(pt.V));
  return product_sum(pt.U, pt.V, w) - (w.K_tilde - w.lambda * pt.phi) * log(pt.U) -
         pt.beta1 * w.c * log(pt.V - T(1.0));
}

template double eq1_value<double>(const BasicPoint<double>&, const Weights<double>&, SumRange, Eq1Variant);
template Interval eq1_value<Interval>(const BasicPoint<Interval>&, const Weights<Interval>&, SumRange, Eq1Variant);
template double eq2_value<double>(const BasicPoint<double>&, const Weights<double>&);
template Interval eq2_value<Interval>(const BasicPoint<Interval>&, const Weights<Interval>&);
template double eq2_direct_value<double>(const BasicPoint<double>&, const Weights<double>&);
template double log_g2_value<double>(const BasicPoint<double>&, const Weights<double>&);
template Interval log_g2_value<Interval>(const BasicPoint<Interval>&, const Weights<Interval>&);

double eq1(const PhiBetaPoint& pt, const Weights<double>& w, SumRange range) { return eq1_value<double>(pt, w, range); }
double eq2(const PhiBetaPoint& pt, const Weights<double>& w) { return eq2_value<double>(pt, w); }
double eq2_direct(const PhiBetaPoint& pt, const Weights<double>& w) { return eq2_direct_value<double>(pt, w); }
double eq1_partial(Eq1Variant variant, const PhiBetaPoint& pt, const Weights<double>& w) {
  return eq1_value<double>(pt, w, SumRange::strict, variant);
}
double log_g2(const PhiBetaPoint& pt, const Weights<double>& w) { return log_g2_value<double>(pt, w); }

Interval eq1_enclosure(double phi, double beta1, const Weights<Interval>& w) {
  return eq1_value<Interval>(derive<Interval>(Interval(phi), Interval(beta1)), w);
}

Interval eq2_enclosure(double phi, double beta1, const Weights<Interval>& w) {
  return eq2_value<Interval>(derive<Interval>(Interval(phi), Interval(beta1)), w);
}

MuMoments mu_moments(const MuTable& mu, const Weights<double>& w) {
  CompensatedSum b, h;
  for (int x = 0; x <= mu.x_max(); ++x)
    for (int p = 0; 2 * p <= x; ++p) {
      double kt = w.kt[tri(x, p)];
      CompensatedSum row;
      for (int j = 0; j <= x; ++j) row.add(std::abs(p - j) * mu.at(x, p, j));
      b.add(kt * row.value());
      h.add((x - 2 * p) * kt * mu.alpha(x, p));
    }
  return {(w.K_tilde - h.value()) / w.lambda, b.value() / w.c};
}

namespace {

double brace(double phi, double beta1) {
  double Y = 3 * phi - beta1, W = 3 * (1 - phi);
  double b2 = 3 * (1 - phi) - 2 * beta1, b3 = beta1 - 2 + 3 * phi;
  if (!(Y > 0 && W > 0 && b2 > 0 && b3 > 0)) throw DomainError("objective: derived betas outside the domain");
  return xlogx(Y) + xlogx(W) - xlogx(b2) - b3 * std::log(3 * b3);
}

}  // namespace

double objective_f1(const MuTable& mu, const Weights<double>& w) {
  CompensatedSum s;
  for (int x = 0; x <= mu.x_max(); ++x)
    for (int p = 0; 2 * p <= x; ++p) {
      double kt = w.kt[tri(x, p)];
      for (int j = 0; j <= x; ++j) {
        double m = mu.at(x, p, j);
        if (!(m > 0)) throw DomainError("objective_f1: mu must be strictly positive");
        s.add(kt * m * (log_h(x, p, j) - std::log(m)));
      }
    }
  MuMoments mom = mu_moments(mu, w);
  return s.value() + w.c * brace(mom.phi, mom.beta1);
}

MuTable gradient_f1(const MuTable& mu, const Weights<double>& w) {
  MuMoments mom = mu_moments(mu, w);
  auto pt = derive<double>(mom.phi, mom.beta1);
  double lu = std::log(pt.U), lvm = std::log(pt.V - 1);
  MuTable g(mu.x_max());
  for (int x = 0; x <= mu.x_max(); ++x)
    for (int p = 0; 2 * p <= x; ++p) {
      double kt = w.kt[tri(x, p)];
      for (int j = 0; j <= x; ++j) {
        double m = mu.at(x, p, j);
        if (!(m > 0)) throw DomainError("gradient_f1: mu must be strictly positive");
        double base = log_h(x, p, j) - std::log(m) - 1;
        if (j < p)
          g.at(x, p, j) = kt * (base + (x - 2 * p) * lu + (p - j) * lvm);
        else
          g.at(x, p, j) = kt * (base + (j - p) * lvm);
      }
    }
  return g;
}

double log_rate_point(const PhiBetaPoint& pt, const Weights<double>& w) {
  return w.base_log_rate + log_g2(pt, w) + w.c * brace(pt.phi, pt.beta1);
}

namespace {

// -min over [lo, hi] of the convex g(b) = b log(s b), whose minimum is at 1/(s e).
template <class T>
T neg_convex_min(const T& lo, const T& hi, double s) {
  using std::exp;
  using std::log;
  T at_min = -(T(1.0) / (T(s) * exp(T(1.0))));
  double argmin = 1.0 / (s * std::exp(1.0));
  if (lower(lo) <= argmin && argmin <= upper(hi)) return -at_min;
  T glo = lo * log(T(s) * lo), ghi = hi * log(T(s) * hi);
  return lower(glo) < lower(ghi) ? -glo : -ghi;
}

}  // namespace

template <class T>
double log_rate_majorant(const Rectangle& r, const Weights<T>& w) {
  using std::log;
  if (!(r.phi_lo <= r.phi_hi && r.beta_lo <= r.beta_hi)) throw DomainError("rate: empty rectangle");
  const T pm(r.phi_lo), pp(r.phi_hi), bm(r.beta_lo), bp(r.beta_hi);
  auto low = derive<T>(pm, bm);
  auto high = derive<T>(pp, bp);
  // U increases and V decreases in each variable.
  const T U_hat = high.U, U_brv = low.U, V_hat = low.V, V_brv = high.V;
  require_V(lower(V_brv));
  T total = w.base_log_rate + product_sum<T>(U_hat, V_hat, w);
  total = total + pick_max<T>({(w.lambda * pm - w.K_tilde) * log(U_brv), (w.lambda * pm - w.K_tilde) * log(U_hat),
                               (w.lambda * pp - w.K_tilde) * log(U_brv), (w.lambda * pp - w.K_tilde) * log(U_hat)});
  total = total + pick_max<T>({-bm * w.c * log(V_brv - T(1.0)), -bm * w.c * log(V_hat - T(1.0)),
                               -bp * w.c * log(V_brv - T(1.0)), -bp * w.c * log(V_hat - T(1.0))});
  const T Y_lo = T(3.0) * pm - bp, Y_hi = T(3.0) * pp - bm;
  const T W_lo = T(3.0) * (T(1.0) - pp), W_hi = T(3.0) * (T(1.0) - pm);
  const T b2_lo = T(3.0) * (T(1.0) - pp) - T(2.0) * bp, b2_hi = T(3.0) * (T(1.0) - pm) - T(2.0) * bm;
  const T b3_lo = bm - T(2.0) + T(3.0) * pm, b3_hi = bp - T(2.0) + T(3.0) * pp;
  T brace_sum = pick_max<T>({xlogx_t(Y_lo), xlogx_t(Y_hi)}) + pick_max<T>({xlogx_t(W_lo), xlogx_t(W_hi)}) +
                neg_convex_min<T>(b2_lo, b2_hi, 1.0) + neg_convex_min<T>(b3_lo, b3_hi, 3.0);
  total = total + w.c * brace_sum;
  return upper(total);
}

template double log_rate_majorant<double>(const Rectangle&, const Weights<double>&);
template double log_rate_majorant<Interval>(const Rectangle&, const Weights<Interval>&);

}  // namespace tsat
