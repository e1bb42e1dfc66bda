#include "tsat/numeric.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <vector>

#include "tsat/errors.hpp"

namespace tsat {

namespace {

using Float50 = boost::multiprecision::cpp_bin_float_50;

constexpr unsigned kCacheSize = 1024;

const std::vector<double>& log_factorial_cache() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kCacheSize);
    BigInt f = 1;
    for (unsigned n = 0; n < kCacheSize; ++n) {
      if (n > 0) f *= n;
      t[n] = log_exact(f);
    }
    return t;
  }();
  return table;
}

}  // namespace

BigInt exact_factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt exact_binomial(unsigned n, unsigned k) {
  if (k > n) throw DomainError("binomial: k > n");
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

double log_exact(const BigInt& v) {
  if (v <= 0) throw DomainError("log of a non-positive integer");
  Float50 f(v);
  return static_cast<double>(boost::multiprecision::log(f));
}

double log_factorial(unsigned n) {
  if (n < kCacheSize) return log_factorial_cache()[n];
  return log_exact(exact_factorial(n));
}

double log_binomial(unsigned n, unsigned k) {
  constexpr unsigned kRows = 128;
  static const std::vector<double> table = [] {
    std::vector<double> t;
    t.reserve(kRows * (kRows + 1) / 2);
    for (unsigned a = 0; a < kRows; ++a)
      for (unsigned b = 0; b <= a; ++b) t.push_back(log_exact(exact_binomial(a, b)));
    return t;
  }();
  if (k > n) throw DomainError("binomial: k > n");
  if (n < kRows) return table[n * (n + 1) / 2 + k];
  return log_exact(exact_binomial(n, k));
}

}  // namespace tsat
