#include <doctest.h>

#include <boost/math/distributions/poisson.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <string>

#include "tsat/distribution.hpp"
#include "tsat/errors.hpp"

using namespace tsat;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

// 2^-x C(x,p) e^-lambda lambda^x / x! in 50 digits
big kappa_big(int x, int p, big lambda) {
  big v = exp(-lambda) * pow(lambda, x) / pow(big(2), x);
  for (int k = 1; k <= x; ++k) v /= k;
  for (int k = 0; k < p; ++k) v = v * (x - k) / (k + 1);
  return v;
}

const double kLambda = 3 * 4.506;

}  // namespace

TEST_SUITE("distribution") {
  TEST_CASE("kappa against a 50-digit oracle") {
    for (auto [x, p] : {std::pair{3, 1}, {0, 0}, {10, 5}, {20, 3}, {56, 28}, {56, 0}}) {
      double oracle = static_cast<double>(kappa_big(x, p, big(kLambda)));
      CHECK(kappa(x, p, kLambda) == doctest::Approx(oracle).epsilon(1e-13));
    }
    double k31 = 0.375 * std::exp(-kLambda) * std::pow(kLambda, 3) / 6;
    CHECK(kappa(3, 1, kLambda) == doctest::Approx(k31).epsilon(1e-13));
  }

  TEST_CASE("kappa_tilde doubles strict unbalance and zeroes the other half") {
    CHECK(kappa_tilde(3, 1, kLambda) == doctest::Approx(2 * kappa(3, 1, kLambda)).epsilon(1e-15));
    CHECK(kappa_tilde(4, 2, kLambda) == kappa(4, 2, kLambda));
    CHECK(kappa_tilde(3, 2, kLambda) == 0.0);
    // x = 6 column: p = 0,1,2 doubled, p = 3 single, p > 3 zero
    for (int p = 0; p <= 6; ++p) {
      double expect = p < 3 ? 2 * kappa(6, p, kLambda) : p == 3 ? kappa(6, 3, kLambda) : 0.0;
      CHECK(kappa_tilde(6, p, kLambda) == expect);
    }
    CHECK_THROWS_AS(kappa(2, 3, kLambda), DomainError);
  }

  TEST_CASE("unbalanced mass matches the typical mass") {
    auto t = build_tables(ModelParams::certification());
    CHECK(t.unbalanced.total() == doctest::Approx(t.typical.total()).epsilon(1e-14));
  }

  TEST_CASE("invalid x_max names the violated lower bound") {
    try {
      build_tables(ModelParams::make(4.506, 2, 1e-15));
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("xmaxlb2") != std::string::npos);
    }
  }

  TEST_CASE("grid counts") {
    CHECK(D_count(56) == 1653);
    CHECK(N_count(56) == 32103);
    for (int x = 0; x <= 60; x += 2) {
      long long n = 0;
      for (int xx = 0; xx <= x; ++xx)
        for (int p = 0; 2 * p <= xx; ++p) n += xx + 1;
      CHECK(N_count(x) == n);
      CHECK(D_count(x) == tri_size(x));
    }
    auto t = build_tables(ModelParams::certification());
    CHECK(t.consts.D == 1653);
    CHECK(t.consts.N == 32103);
  }

  TEST_CASE("rho is tiny and matches a long partial sum") {
    double rho = rho_tail(kLambda, 56);
    CHECK(rho > 0);
    CHECK(rho < 1e-14);
    big s = 0;
    for (int p = 29; 2 * p <= 1000; ++p) s += kappa_big(2 * p, p, big(kLambda));
    CHECK(rho == doctest::Approx(static_cast<double>(s)).epsilon(1e-12));
    double prev = rho_tail(kLambda, 40);
    for (int x = 42; x <= 60; x += 2) {
      double r = rho_tail(kLambda, x);
      CHECK(r < prev);
      prev = r;
    }
  }

  TEST_CASE("typical triangle sums to the Poisson cdf") {
    auto t = build_tables(ModelParams::certification());
    boost::math::poisson_distribution<double> pd(kLambda);
    double tail = boost::math::cdf(boost::math::complement(pd, 56.0));
    double total = t.typical.total();
    CHECK(total <= 1.0 + 1e-14);  // per-term rounding can tip the sum one ulp past 1
    CHECK(total > 1.0 - t.consts.rho - tail - 1e-15);
    CHECK(total == doctest::Approx(1.0 - tail).epsilon(1e-14));
  }

  TEST_CASE("interval weights enclose the float weights") {
    auto params = ModelParams::certification();
    auto wd = make_weights<double>(params);
    auto wi = make_weights<Interval>(params);
    REQUIRE(wd.kt.size() == wi.kt.size());
    for (std::size_t k = 0; k < wd.kt.size(); ++k) CHECK(wi.kt[k].contains(wd.kt[k]));
    CHECK(wi.K_tilde.contains(wd.K_tilde));
    CHECK(wi.base_log_rate.contains(wd.base_log_rate));
  }
}
