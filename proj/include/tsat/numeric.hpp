#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

namespace tsat {

using BigInt = boost::multiprecision::cpp_int;

// Neumaier variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) {
    double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(double v) {
    add(v);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Compensated for double, plain for other scalar types (e.g. intervals,
// whose rounding is already outward).
template <class T>
class Accumulator {
 public:
  void add(const T& v) { s_ = s_ + v; }
  T value() const { return s_; }

 private:
  T s_{0.0};
};

template <>
class Accumulator<double> {
 public:
  void add(double v) { s_.add(v); }
  double value() const { return s_.value(); }

 private:
  CompensatedSum s_;
};

BigInt exact_factorial(unsigned n);
BigInt exact_binomial(unsigned n, unsigned k);

// Natural log of an exact positive integer, rounded to nearest double.
double log_exact(const BigInt& v);

// Cached; accurate to within half an ulp of the true value.
double log_factorial(unsigned n);
double log_binomial(unsigned n, unsigned k);

inline double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

inline long long round_half_up(double v) { return static_cast<long long>(std::floor(v + 0.5)); }

}  // namespace tsat
