#include "tsat/params.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "tsat/errors.hpp"
#include "tsat/ledger.hpp"

namespace tsat {

AprioriBounds AprioriBounds::certification() {
  return {0.33018, 0.52891, 0.33018, 0.52891, 0.077639, 0.21782, 0.525245, 0.619063};
}

AprioriBounds AprioriBounds::general_gamma() { return {0.21, 0.65, 0.21, 0.65, 0.017, 0.32, 0.47, 0.68}; }

bool AprioriBounds::contains(double phi, double beta1) const {
  double beta2 = 3 * (1 - phi) - 2 * beta1;
  double beta3 = beta1 - 2 + 3 * phi;
  return phi >= phi_min && phi <= phi_max && beta1 >= beta1_min && beta1 <= beta1_max && beta2 >= beta2_min &&
         beta2 <= beta2_max && beta3 >= beta3_min && beta3 <= beta3_max;
}

ModelParams ModelParams::certification() { return ModelParams{}; }

bool ModelParams::is_certification() const {
  return c == 4.506 && c_min == c && c_max == c && x_max == 56 && epsilon == 1e-15;
}

ModelParams ModelParams::make(double c, int x_max, double epsilon) {
  ModelParams p;
  p.c = c;
  p.lambda = 3 * c;
  p.x_max = x_max;
  p.epsilon = epsilon;
  p.c_min = c;
  p.c_max = c;
  if (c == 4.506) {
    p.a_priori = AprioriBounds::certification();
  } else {
    double r3 = (x_max >= 0 && epsilon >= 0) ? R3(epsilon, x_max, p.lambda_min(), p.lambda_max()) : 0.0;
    p.a_priori = widen_intervals(AprioriBounds::general_gamma(), r3);
  }
  return p;
}

void ModelParams::validate() const {
  std::vector<std::string> bad;
  if (!(c_min >= 3 && c_max <= 5 && c_min <= c && c <= c_max)) bad.push_back("3 <= c_min <= c <= c_max <= 5");
  if (lambda != 3 * c) bad.push_back("lambda = 3c");
  if (!(epsilon >= 0 && epsilon < 1e-3)) bad.push_back("0 <= epsilon < 1e-3");
  if (x_max < 2 || x_max % 2 != 0) bad.push_back("x_max even and >= 2");
  // xmaxlb1 must hold for every lambda in [lambda_min, lambda_max].
  double worst = 0;
  const int samples = 1000;
  for (int i = 0; i <= samples; ++i) {
    double l = lambda_min() + (lambda_max() - lambda_min()) * i / samples;
    if (l <= 2) continue;
    worst = std::max(worst, (2 * l - std::log(2.0)) / (std::log(l) - std::log(2.0)));
  }
  if (!(x_max >= worst)) {
    std::ostringstream os;
    os << "xmaxlb1: x_max >= (2 lambda - log 2)/(log lambda - log 2) = " << worst;
    bad.push_back(os.str());
  }
  if (!(x_max > lambda_max())) {
    std::ostringstream os;
    os << "xmaxlb2: x_max > lambda_max = " << lambda_max();
    bad.push_back(os.str());
  }
  if (!(a_priori.phi_min < a_priori.phi_max && a_priori.beta1_min < a_priori.beta1_max))
    bad.push_back("a-priori intervals non-empty");
  if (bad.empty()) return;
  std::string msg = "invalid parameters:";
  for (auto& b : bad) msg += " [" + b + "]";
  throw ConfigError(msg);
}

}  // namespace tsat
