#pragma once

#include <vector>

#include "tsat/distribution.hpp"
#include "tsat/interval.hpp"
#include "tsat/params.hpp"

namespace tsat {

template <class T>
struct BasicPoint {
  T phi{}, beta1{}, beta2{}, beta3{};
  T X{}, Y{}, Z{};
  T U{}, V{};
};

struct PhiBetaPoint : BasicPoint<double> {
  bool feasible = false;
};

// Throws SingularPointError if beta2, beta3 or 3phi - beta1 is not positive.
template <class T>
BasicPoint<T> derive(T phi, T beta1);

extern template BasicPoint<double> derive<double>(double, double);
extern template BasicPoint<Interval> derive<Interval>(Interval, Interval);

PhiBetaPoint derive_point(double phi, double beta1, const ModelParams& params);

// (beta1 + 6phi - 3)^2 / (3 beta3 (3phi - beta1)); same value as pt.V.
double V_alternate(const PhiBetaPoint& pt);

double h_weight(int x, int p, int j);
double mu_closed_form(int x, int p, int j, const PhiBetaPoint& pt);
double alpha_closed_form(int x, int p, const PhiBetaPoint& pt);

// mu(x, p, j) for 0 <= 2p <= x <= x_max, 0 <= j <= x.
class MuTable {
 public:
  explicit MuTable(int x_max);
  int x_max() const { return x_max_; }
  double& at(int x, int p, int j) { return values_[offset(x, p) + j]; }
  double at(int x, int p, int j) const { return values_[offset(x, p) + j]; }
  double alpha(int x, int p) const;
  std::size_t size() const { return values_.size(); }
  std::vector<double>& raw() { return values_; }
  const std::vector<double>& raw() const { return values_; }

 private:
  int offset(int x, int p) const { return offsets_[tri(x, p)]; }
  int x_max_;
  std::vector<int> offsets_;
  std::vector<double> values_;
};

MuTable mu_table(const PhiBetaPoint& pt, int x_max);

enum class SumRange { strict, with_diagonal };
enum class Eq1Variant { full, star, star_star };

template <class T>
T eq1_value(const BasicPoint<T>& pt, const Weights<T>& w, SumRange range = SumRange::strict,
            Eq1Variant variant = Eq1Variant::full);
// The "modified" form built from the D_{x,p} factors.
template <class T>
T eq2_value(const BasicPoint<T>& pt, const Weights<T>& w);
// The direct form obtained from the beta1 coefficient; equals eq2 when eq1 = 0.
template <class T>
T eq2_direct_value(const BasicPoint<T>& pt, const Weights<T>& w);
template <class T>
T log_g2_value(const BasicPoint<T>& pt, const Weights<T>& w);

extern template double eq1_value<double>(const BasicPoint<double>&, const Weights<double>&, SumRange, Eq1Variant);
extern template Interval eq1_value<Interval>(const BasicPoint<Interval>&, const Weights<Interval>&, SumRange,
                                             Eq1Variant);
extern template double eq2_value<double>(const BasicPoint<double>&, const Weights<double>&);
extern template Interval eq2_value<Interval>(const BasicPoint<Interval>&, const Weights<Interval>&);
extern template double eq2_direct_value<double>(const BasicPoint<double>&, const Weights<double>&);
extern template double log_g2_value<double>(const BasicPoint<double>&, const Weights<double>&);
extern template Interval log_g2_value<Interval>(const BasicPoint<Interval>&, const Weights<Interval>&);

// Convenience wrappers in double arithmetic.
double eq1(const PhiBetaPoint& pt, const Weights<double>& w, SumRange range = SumRange::strict);
double eq2(const PhiBetaPoint& pt, const Weights<double>& w);
double eq2_direct(const PhiBetaPoint& pt, const Weights<double>& w);
double eq1_partial(Eq1Variant variant, const PhiBetaPoint& pt, const Weights<double>& w);
double log_g2(const PhiBetaPoint& pt, const Weights<double>& w);

// Certified enclosures at an exact point.
Interval eq1_enclosure(double phi, double beta1, const Weights<Interval>& w);
Interval eq2_enclosure(double phi, double beta1, const Weights<Interval>& w);

// phi and beta1 reconstructed from a mu table.
struct MuMoments {
  double phi;
  double beta1;
};
MuMoments mu_moments(const MuTable& mu, const Weights<double>& w);

// Objective sum kt sum_j mu log(h/mu) + c{Y log Y + 3(1-phi) log 3(1-phi) - b2 log b2 - b3 log 3b3},
// phi and beta1 taken from mu_moments.
double objective_f1(const MuTable& mu, const Weights<double>& w);
MuTable gradient_f1(const MuTable& mu, const Weights<double>& w);

// Log of the n-independent per-variable rate at a point (exploratory).
double log_rate_point(const PhiBetaPoint& pt, const Weights<double>& w);

// Upper bound of the log rate over a rectangle by evaluating each factor at
// its worst corner. Float mode returns the plain value, interval mode the
// upper endpoint of an outward-rounded enclosure.
template <class T>
double log_rate_majorant(const Rectangle& r, const Weights<T>& w);

extern template double log_rate_majorant<double>(const Rectangle&, const Weights<double>&);
extern template double log_rate_majorant<Interval>(const Rectangle&, const Weights<Interval>&);

}  // namespace tsat
