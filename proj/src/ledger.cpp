#include "tsat/ledger.hpp"

#include <cmath>

#include "tsat/errors.hpp"
#include "tsat/interval.hpp"
#include "tsat/numeric.hpp"

namespace tsat {

const char* to_string(Direction d) { return d == Direction::upper ? "upper" : "lower"; }
const char* to_string(Arithmetic a) { return a == Arithmetic::float_mode ? "float" : "interval"; }

double log_L(double eta) {
  if (!(eta > 0 && eta <= 0.05)) throw DomainError("L: eta must lie in (0, 0.05]");
  return -2 * eta * std::log(2 * eta);
}

double L_fn(double eta) { return std::exp(log_L(eta)); }

namespace {

// log L with the eta -> 0 limit (log L -> 0) allowed, as needed when eps = 0.
template <class T>
T log_L_t(const T& eta) {
  using std::log;
  if (upper(eta) == 0) return T(0.0);
  if (!(lower(eta) > 0 && upper(eta) <= 0.05)) throw ConfigError("L: argument outside (0, 0.05]");
  return -T(2.0) * eta * log(T(2.0) * eta);
}

template <class T>
T poisson_tail_term(double lambda, int power, unsigned fact) {
  using std::exp;
  using std::log;
  return exp(T(double(power)) * log(decimal<T>(lambda)) - decimal<T>(log_factorial(fact)));
}

template <class T>
T R1_t(double eps, int x, double lmax) {
  return poisson_tail_term<T>(lmax, x + 1, x + 1) + decimal<T>(eps) * T(double(D_count(x)));
}

template <class T>
T R2_t(double eps, int x, double lmax) {
  return poisson_tail_term<T>(lmax, x + 1, x) + decimal<T>(eps) * T(P2(x));
}

template <class T>
T R3_t(double eps, int x, double lmin, double lmax) {
  return poisson_tail_term<T>(lmax, x, x) + decimal<T>(eps) / decimal<T>(lmin) * T(P2(x) + P3(x));
}

template <class T>
GFactors g_factors_t(const ModelParams& prm) {
  using std::exp;
  using std::log;
  using std::log1p;
  const int x = prm.x_max;
  const double xd = x;
  const T eps = decimal<T>(prm.epsilon);
  const T lmin = decimal<T>(prm.lambda_min()), lmax = decimal<T>(prm.lambda_max());
  const T cmax = decimal<T>(prm.c_max);
  const T ln2 = log2_const<T>();
  const T r1 = R1_t<T>(prm.epsilon, x, prm.lambda_max());
  const T r2 = R2_t<T>(prm.epsilon, x, prm.lambda_max());
  const T r3 = R3_t<T>(prm.epsilon, x, prm.lambda_min(), prm.lambda_max());
  const T p3 = T(P3(x));
  const T e = exp(T(1.0));

  T g1 = r1 * ln2 + log_L_t(r1) + log_L_t(r2) + r2 * log(T(18.0) * e / lmin) + T(6.0) * log_L_t(r2 / T(6.0));
  g1 = g1 + cmax * (log_L_t(T(3.0) * eps * p3 / lmin) + log_L_t(T(6.0) * eps * p3 / lmin));
  g1 = g1 + cmax * (T(2.0) * log_L_t(T(3.0) * r3) + log_L_t(T(9.0) * r3) + log_L_t(T(6.0) * r3) +
                    r3 * log(T(3.0)));

  T ga = eps * log(T(12.0)) + T(xd / 8 * (xd * xd + 2 * xd - 1)) * eps * ln2 + T(xd / 4 * (xd + 3)) * log_L_t(eps);
  T gb = T(xd / 4 * (xd + 1)) * log1p(eps);
  // e^-lambda (lambda/2)^x_max increases in lambda below x_max, so lambda_max is the worst case.
  T inner = T(xd + 4) * ln2 + T(xd + 8) * (-lmax + T(xd) * log(lmax / T(2.0)));
  T gc = eps * (T((xd + 2) / 2) * log(T(xd + 1)) + T(xd / 24 * (xd + 1) * (xd - 7)) * ln2 + T((xd + 1) / 4) * inner);

  GFactors g;
  g.log_G1 = upper(g1);
  g.log_GA = upper(ga);
  g.log_GB = upper(gb);
  g.log_GC = upper(gc);
  g.log_G2 = upper(ga + gb + gc);
  return g;
}

}  // namespace

double R1(double eps, int x_max, double lambda_max) { return R1_t<double>(eps, x_max, lambda_max); }
double R2(double eps, int x_max, double lambda_max) { return R2_t<double>(eps, x_max, lambda_max); }
double R3(double eps, int x_max, double lambda_min, double lambda_max) {
  return R3_t<double>(eps, x_max, lambda_min, lambda_max);
}

AprioriBounds widen_intervals(const AprioriBounds& g, double r3) {
  AprioriBounds b = g;
  b.beta1_min -= 3 * r3;
  b.beta1_max += 3 * r3;
  b.beta2_min -= 9 * r3;
  b.beta2_max += 9 * r3;
  b.beta3_min -= 6 * r3;
  b.beta3_max += 6 * r3;
  b.phi_min -= r3;
  b.phi_max += r3;
  return b;
}

GFactors g_factors(const ModelParams& params, Arithmetic mode) {
  return mode == Arithmetic::float_mode ? g_factors_t<double>(params) : g_factors_t<Interval>(params);
}

bool ErrorBudget::sound() const {
  for (const auto& e : entries)
    if (!std::isfinite(e.value) || e.value < 0) return false;
  return true;
}

bool ErrorBudget::all_pass() const {
  for (const auto& e : entries)
    if (!e.passes()) return false;
  return true;
}

ErrorBudget compute_ledger(const Tables& tables, Arithmetic mode) {
  const ModelParams& prm = tables.params;
  ErrorBudget b;
  b.mode = mode;
  const bool iv = mode == Arithmetic::interval_mode;
  b.R1 = iv ? upper(R1_t<Interval>(prm.epsilon, prm.x_max, prm.lambda_max())) : R1(prm.epsilon, prm.x_max, prm.lambda_max());
  b.R2 = iv ? upper(R2_t<Interval>(prm.epsilon, prm.x_max, prm.lambda_max())) : R2(prm.epsilon, prm.x_max, prm.lambda_max());
  b.R3 = iv ? upper(R3_t<Interval>(prm.epsilon, prm.x_max, prm.lambda_min(), prm.lambda_max()))
            : R3(prm.epsilon, prm.x_max, prm.lambda_min(), prm.lambda_max());
  b.g = g_factors(prm, mode);
  const double D = double(tables.consts.D);
  if (iv) {
    Interval eps = Interval::around(prm.epsilon);
    Interval extra = Interval(2.0) * eps * Interval(D) / exp(Interval(1.0));
    b.log_prefactor = upper(Interval(b.g.log_G1) + Interval(b.g.log_G2) + extra);
    // rho is a short positive sum; a relative 1e-12 allowance covers its rounding.
    Interval rho(tables.consts.rho, tables.consts.rho * (1 + 1e-12));
    b.log_unbalancing = upper((rho + eps * Interval(tables.consts.delta)) * log2_const<Interval>());
  } else {
    b.log_prefactor = b.g.log_G1 + b.g.log_G2 + 2 * prm.epsilon * D / std::exp(1.0);
    b.log_unbalancing = (tables.consts.rho + prm.epsilon * tables.consts.delta) * std::log(2.0);
  }
  b.widened = widen_intervals(AprioriBounds::general_gamma(), b.R3);

  const bool cert = prm.c_min == prm.c_max;
  auto add = [&](std::string s, std::string f, double v, double target) {
    b.entries.push_back({std::move(s), std::move(f), v, Direction::upper, target});
  };
  add("R1", "lambda_max^(x+1)/(x+1)! + eps D(x)", b.R1, kNoTarget);
  add("R2", "lambda_max^(x+1)/x! + eps P2(x)", b.R2, 1.54e-8);
  add("R3", "lambda_max^x/x! + (eps/lambda_min)(P2(x) + P3(x))", b.R3, cert ? 1.104e-11 : 1.035e-9);
  add("log_G1", "log of 2^R1 L(R1) L(R2) (18e/lambda_min)^R2 L(R2/6)^6 [...]^c_max", b.g.log_G1, kNoTarget);
  add("log_GA", "eps log 12 + (x/8)(x^2+2x-1) eps log 2 + (x/4)(x+3) log L(eps)", b.g.log_GA, kNoTarget);
  add("log_GB", "(x/4)(x+1) log(1+eps)", b.g.log_GB, kNoTarget);
  add("log_GC", "eps log of the G_C brace at lambda_max", b.g.log_GC, kNoTarget);
  add("log_G2", "log_GA + log_GB + log_GC", b.g.log_G2, kNoTarget);
  add("log_prefactor", "log(G1 G2 exp(2 eps D/e))", b.log_prefactor, std::log1p(1e-7));
  add("log_unbalancing", "(rho + eps Delta) log 2", b.log_unbalancing, std::log1p(1e-14));
  return b;
}

}  // namespace tsat
