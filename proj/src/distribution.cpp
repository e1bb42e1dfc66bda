#include "tsat/distribution.hpp"

#include <cmath>

#include "tsat/errors.hpp"
#include "tsat/numeric.hpp"

namespace tsat {

namespace {

void check_xp(int x, int p) {
  if (x < 0 || p < 0 || p > x) throw DomainError("kappa: need 0 <= p <= x");
}

}  // namespace

double poisson_mass(int x, double lambda) {
  return std::exp(-lambda + x * std::log(lambda) - log_factorial(static_cast<unsigned>(x)));
}

double log_kappa(int x, int p, double lambda) {
  check_xp(x, p);
  return -x * std::log(2.0) + log_binomial(x, p) - lambda + x * std::log(lambda) - log_factorial(x);
}

double kappa(int x, int p, double lambda) { return std::exp(log_kappa(x, p, lambda)); }

double kappa_tilde(int x, int p, double lambda) {
  check_xp(x, p);
  if (x > 2 * p) return 2 * kappa(x, p, lambda);
  if (x == 2 * p) return kappa(x, p, lambda);
  return 0.0;
}

OccurrenceTable::OccurrenceTable(TableKind kind, int x_max, double lambda)
    : kind_(kind), x_max_(x_max), lambda_(lambda), values_(tri_size(x_max), 0.0) {}

double OccurrenceTable::total() const {
  CompensatedSum s;
  for (double v : values_) s.add(v);
  return s.value();
}

double rho_tail(double lambda, int x_max) {
  const int cutoff = 400;
  CompensatedSum s;
  double last = 0;
  int first = x_max / 2 + 1;
  for (int p = first; 2 * p <= cutoff; ++p) {
    last = kappa(2 * p, p, lambda);
    s.add(last);
  }
  double r = lambda * lambda / (double(cutoff) * cutoff);
  s.add(last * r / (1 - r));
  return s.value();
}

Tables build_tables(const ModelParams& params) {
  params.validate();
  Tables t;
  t.params = params;
  t.typical = OccurrenceTable(TableKind::typical, params.x_max, params.lambda);
  t.unbalanced = OccurrenceTable(TableKind::unbalanced, params.x_max, params.lambda);
  CompensatedSum k_tilde;
  for (int x = 0; x <= params.x_max; ++x) {
    for (int p = 0; p <= x; ++p) {
      t.typical.at(x, p) = kappa(x, p, params.lambda);
      t.unbalanced.at(x, p) = kappa_tilde(x, p, params.lambda);
      k_tilde.add((x - p) * t.unbalanced.at(x, p));
    }
  }
  t.consts.rho = rho_tail(params.lambda, params.x_max);
  t.consts.delta = 0.5 * (params.x_max / 2.0 + 1);
  t.consts.D = D_count(params.x_max);
  t.consts.N = N_count(params.x_max);
  t.consts.K_tilde = k_tilde.value();
  return t;
}

template <class T>
Weights<T> make_weights(const ModelParams& params) {
  using std::exp;
  using std::log;
  params.validate();
  Weights<T> w;
  w.x_max = params.x_max;
  w.c = decimal<T>(params.c);
  w.lambda = T(3.0) * w.c;
  w.kt.assign(tri_size(params.x_max), T(0.0));
  w.log_kt.assign(tri_size(params.x_max), T(0.0));
  const T ln2 = log2_const<T>();
  const T log_lambda = log(w.lambda);
  Accumulator<T> k_tilde, strict_mass, entropy;
  for (int x = 0; x <= params.x_max; ++x) {
    T log_poisson = -w.lambda + T(double(x)) * log_lambda - decimal<T>(log_factorial(x));
    for (int p = 0; 2 * p <= x; ++p) {
      T lk = log_poisson - T(double(x)) * ln2 + decimal<T>(log_binomial(x, p));
      if (x > 2 * p) lk = lk + ln2;
      T k = exp(lk);
      w.kt[tri(x, p)] = k;
      w.log_kt[tri(x, p)] = lk;
      k_tilde.add(T(double(x - p)) * k);
      if (x > 2 * p) strict_mass.add(k);
      entropy.add(k * (decimal<T>(log_factorial(p)) + decimal<T>(log_factorial(x - p)) + lk));
    }
  }
  w.K_tilde = k_tilde.value();
  T log3 = decimal<T>(std::log(3.0));
  T log6 = decimal<T>(std::log(6.0));
  w.base_log_rate = w.c * log3 + w.lambda * (log_lambda - log6 - T(1.0)) + ln2 * strict_mass.value() - entropy.value();
  return w;
}

template Weights<double> make_weights<double>(const ModelParams&);
template Weights<Interval> make_weights<Interval>(const ModelParams&);

}  // namespace tsat
