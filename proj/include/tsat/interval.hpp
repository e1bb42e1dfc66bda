#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "tsat/errors.hpp"

namespace tsat {

// Closed interval with outward rounding. Arithmetic operators are computed
// in round-to-nearest and then widened by one ulp per endpoint, which
// encloses the exact result since IEEE +,-,*,/,sqrt are correctly rounded.
// exp/log/log1p are widened by two ulps; this assumes the platform libm
// stays within one ulp, which holds for glibc on x86-64.
class Interval {
 public:
  Interval() = default;
  Interval(double v) : lo_(v), hi_(v) {}  // NOLINT: exact double
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo <= hi)) throw DomainError("interval with lo > hi");
  }

  // Encloses a real whose nearest double is v (e.g. a decimal literal).
  static Interval around(double v, int ulps = 1) {
    double lo = v, hi = v;
    for (int i = 0; i < ulps; ++i) {
      lo = down(lo);
      hi = up(hi);
    }
    return {lo, hi};
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const { return 0.5 * (lo_ + hi_); }
  double width() const { return hi_ - lo_; }
  bool contains(double v) const { return lo_ <= v && v <= hi_; }
  bool positive() const { return lo_ > 0.0; }

  static double down(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
  static double up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }

  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }
  Interval& operator/=(const Interval& o) { return *this = *this / o; }

  friend Interval operator-(const Interval& a) { return {-a.hi_, -a.lo_}; }
  friend Interval operator+(const Interval& a, const Interval& b) {
    return {down(a.lo_ + b.lo_), up(a.hi_ + b.hi_)};
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return {down(a.lo_ - b.hi_), up(a.hi_ - b.lo_)};
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    double p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
    return {down(std::min({p1, p2, p3, p4})), up(std::max({p1, p2, p3, p4}))};
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo_ <= 0.0 && b.hi_ >= 0.0) throw DomainError("interval division by an interval containing 0");
    double q1 = a.lo_ / b.lo_, q2 = a.lo_ / b.hi_, q3 = a.hi_ / b.lo_, q4 = a.hi_ / b.hi_;
    return {down(std::min({q1, q2, q3, q4})), up(std::max({q1, q2, q3, q4}))};
  }

  friend std::ostream& operator<<(std::ostream& os, const Interval& x) {
    return os << '[' << x.lo_ << ", " << x.hi_ << ']';
  }

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

inline Interval exp(const Interval& x) {
  return {std::max(0.0, Interval::down(Interval::down(std::exp(x.lo())))),
          Interval::up(Interval::up(std::exp(x.hi())))};
}

inline Interval log(const Interval& x) {
  if (!x.positive()) throw DomainError("interval log of a non-positive interval");
  return {Interval::down(Interval::down(std::log(x.lo()))), Interval::up(Interval::up(std::log(x.hi())))};
}

inline Interval log1p(const Interval& x) {
  if (!(x.lo() > -1.0)) throw DomainError("interval log1p below -1");
  return {Interval::down(Interval::down(std::log1p(x.lo()))), Interval::up(Interval::up(std::log1p(x.hi())))};
}

inline Interval sqrt(const Interval& x) {
  if (x.lo() < 0.0) throw DomainError("interval sqrt of a negative interval");
  return {std::max(0.0, Interval::down(std::sqrt(x.lo()))), Interval::up(std::sqrt(x.hi()))};
}

inline Interval abs(const Interval& x) {
  if (x.lo() >= 0) return x;
  if (x.hi() <= 0) return -x;
  return {0.0, std::max(-x.lo(), x.hi())};
}

// x^k for k >= 0 by repeated squaring; positive bases only.
inline Interval pow(Interval x, int k) {
  if (k < 0) return Interval(1.0) / pow(x, -k);
  if (!(x.lo() >= 0.0)) throw DomainError("interval pow needs a nonnegative base");
  Interval r(1.0);
  while (k > 0) {
    if (k & 1) r *= x;
    x *= x;
    k >>= 1;
  }
  return r;
}

// Scalar-generic accessors so templated kernels can run on double or Interval.
inline double upper(double v) { return v; }
inline double lower(double v) { return v; }
inline double upper(const Interval& v) { return v.hi(); }
inline double lower(const Interval& v) { return v.lo(); }
inline double midpoint(double v) { return v; }
inline double midpoint(const Interval& v) { return v.mid(); }

// Decimal input: exact for double, one-ulp enclosure for Interval.
template <class T>
T decimal(double v);
template <>
inline double decimal<double>(double v) {
  return v;
}
template <>
inline Interval decimal<Interval>(double v) {
  return Interval::around(v);
}

template <class T>
T log2_const();
template <>
inline double log2_const<double>() {
  return std::log(2.0);
}
template <>
inline Interval log2_const<Interval>() {
  return Interval::around(std::log(2.0));
}

}  // namespace tsat
