#pragma once

#include <string>

namespace tsat {

// Box and linear constraints on (phi, beta1, beta2, beta3).
struct AprioriBounds {
  double beta1_min, beta1_max;
  double beta2_min, beta2_max;
  double beta3_min, beta3_max;
  double phi_min, phi_max;

  // Tightened intervals for c = 4.506.
  static AprioriBounds certification();
  // Intervals for gamma1, gamma2, gamma3, psi valid for 3 <= c <= 5, before widening.
  static AprioriBounds general_gamma();

  bool contains(double phi, double beta1) const;
};

struct ModelParams {
  double c = 4.506;
  double lambda = 3 * 4.506;
  int x_max = 56;
  double epsilon = 1e-15;
  double c_min = 4.506;
  double c_max = 4.506;
  AprioriBounds a_priori = AprioriBounds::certification();

  static ModelParams certification();
  // c_min = c_max = c. The tightened bounds are used at c = 4.506, otherwise
  // the general intervals widened by the accuracy radius R3.
  static ModelParams make(double c, int x_max, double epsilon);

  double lambda_min() const { return 3 * c_min; }
  double lambda_max() const { return 3 * c_max; }
  bool is_certification() const;

  // Throws ConfigError naming each violated condition.
  void validate() const;
};

struct Rectangle {
  double phi_lo, phi_hi;
  double beta_lo, beta_hi;

  double phi_width() const { return phi_hi - phi_lo; }
  double beta_width() const { return beta_hi - beta_lo; }
  bool contains(double phi, double beta1) const {
    return phi_lo <= phi && phi <= phi_hi && beta_lo <= beta1 && beta1 <= beta_hi;
  }
  bool contains(const Rectangle& r) const {
    return phi_lo <= r.phi_lo && r.phi_hi <= phi_hi && beta_lo <= r.beta_lo && r.beta_hi <= beta_hi;
  }
};

inline Rectangle domain_of(const AprioriBounds& b) { return {b.phi_min, b.phi_max, b.beta1_min, b.beta1_max}; }

// Documented slack used in every sign and threshold comparison.
inline constexpr double kDeltaNum = 1e-9;

}  // namespace tsat
