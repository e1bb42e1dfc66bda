#include "tsat/large_deviation.hpp"

#include <cmath>
#include <limits>

#include "tsat/errors.hpp"

namespace tsat {

double ld_h(double q, double t) {
  if (!(q > 0 && q < 1)) throw DomainError("ld_h: q must lie in (0,1)");
  if (!(t >= 0)) throw DomainError("ld_h: t must be nonnegative");
  if (t > 1 - q) return std::numeric_limits<double>::infinity();
  double a = (q + t) * std::log1p(t / q);
  double rest = 1 - q - t;
  double b = rest > 0 ? rest * std::log1p(-t / (1 - q)) : 0.0;
  return a + b;
}

double binomial_large_deviation(double q, double t) {
  if (!(q > 0 && q < 1)) throw DomainError("binomial_large_deviation: q must lie in (0,1)");
  if (!(t > 0)) throw DomainError("binomial_large_deviation: t must be positive");
  return std::min(ld_h(q, t), ld_h(1 - q, t));
}

double ld_budget(double q, double samples, double alpha, int cells) {
  const double target = std::log(2.0 * cells / alpha) / samples;
  double lo = 0, hi = std::max(q, 1 - q);
  if (binomial_large_deviation(q, hi) < target) return hi;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= 0 || binomial_large_deviation(q, mid) >= target)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace tsat
