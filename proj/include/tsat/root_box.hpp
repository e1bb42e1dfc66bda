#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tsat/interval.hpp"
#include "tsat/params.hpp"

namespace tsat {

using ScalarEq = std::function<double(double phi, double beta1)>;
using EnclosureEq = std::function<Interval(double phi, double beta1)>;

// eq1 decreases where positive and eq2 decreases, in each variable.
struct EquationPair {
  ScalarEq eq1;
  ScalarEq eq2;
  // Optional certified versions used by verify_exclusion in interval mode.
  EnclosureEq eq1_enclosure;
  EnclosureEq eq2_enclosure;
};

enum class SignFamily { eq1_minus, eq2_minus, eq1_plus, eq2_plus };
const char* to_string(SignFamily f);

struct SignCheck {
  int index = 0;
  SignFamily family = SignFamily::eq1_minus;
  double phi = 0;
  double beta1 = 0;
  int equation = 1;
  double value = 0;   // evaluated residual (midpoint in interval mode)
  double margin = 0;  // distance past delta_num in the required direction
  bool passed = false;
};

struct ExclusionTrace {
  Rectangle domain{};
  std::vector<double> phi_minus;   // increasing, starts at phi_min
  std::vector<double> beta_plus;   // decreasing, starts at beta1_max
  std::vector<double> phi_plus;    // decreasing, starts at phi_max
  std::vector<double> beta_minus;  // increasing, starts at beta1_min
  std::string diagnostic;

  int K() const { return static_cast<int>(phi_minus.size()) - 1; }
  int L() const { return static_cast<int>(phi_plus.size()) - 1; }
  Rectangle rectangle() const;
};

struct VerifyResult {
  bool ok = false;
  int failing_index = -1;
  SignFamily failing_family = SignFamily::eq1_minus;
  std::string message;
  std::vector<SignCheck> checks;

  explicit operator bool() const { return ok; }
};

// Throws StructuralError for broken anchoring or monotonicity.
VerifyResult verify_exclusion(const ExclusionTrace& trace, const EquationPair& eqs, bool use_enclosure = false,
                              double delta = kDeltaNum);

// Throws DomainError("cannot start ...") if the corner seeds are missing.
// With use_enclosure every witness is decided on the certified enclosure.
ExclusionTrace spiral_localize(const EquationPair& eqs, const Rectangle& domain, double width_target,
                               double delta = kDeltaNum, int max_steps = 1000, bool use_enclosure = false);

struct ReferenceRoot {
  double phi = 0;
  double beta1 = 0;
  double residual1 = 0;
  double residual2 = 0;
  bool found = false;
  std::string message;
};

ReferenceRoot solve_reference(const EquationPair& eqs, const Rectangle& rect);

}  // namespace tsat
