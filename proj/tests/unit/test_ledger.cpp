#include <doctest.h>

#include <cmath>
#include <random>

#include "tsat/distribution.hpp"
#include "tsat/errors.hpp"
#include "tsat/ledger.hpp"

using namespace tsat;

namespace {

ErrorBudget ledger_at(double eps, Arithmetic mode = Arithmetic::float_mode) {
  return compute_ledger(build_tables(ModelParams::make(4.506, 56, eps)), mode);
}

}  // namespace

TEST_SUITE("ledger") {
  TEST_CASE("L domain and small-argument expansion") {
    CHECK_THROWS_AS(L_fn(0.5), DomainError);
    CHECK_THROWS_AS(L_fn(0.0), DomainError);
    CHECK(L_fn(0.05) == doctest::Approx(std::pow(0.1, -0.1)).epsilon(1e-15));
    CHECK(L_fn(1e-9) - 1 < 5e-8);
    CHECK(L_fn(1e-9) > 1);
  }

  TEST_CASE("entropy sandwich for nearby arguments") {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> ueta(1e-6, 0.05), ux(1e-9, 30.0), u(-1.0, 1.0);
    int tested = 0;
    while (tested < 10000) {
      double eta = ueta(gen), x = ux(gen), y = x + eta * u(gen);
      if (!(y > 0)) continue;
      double log_ratio = y * std::log(y) - x * std::log(x);
      CHECK(std::fabs(log_ratio) <= log_L(eta) + 1e-15);
      ++tested;
    }
  }

  TEST_CASE("accuracy radii") {
    double lmax = 13.518;
    CHECK(R2(1e-15, 56, lmax) < 1.54e-8);
    CHECK(R3(1e-15, 56, lmax, lmax) < 1.104e-11);
    CHECK(R1(1e-15, 56, lmax) == doctest::Approx(2.368e-12).epsilon(1e-3));
    CHECK(R2(1e-15, 56, lmax) == doctest::Approx(1.0246e-10).epsilon(1e-4));
    CHECK(R3(1e-15, 56, lmax, lmax) == doctest::Approx(1.10337e-11).epsilon(1e-5));
    // eps = 0 leaves the Poisson tail terms
    double tail1 = std::exp(57 * std::log(lmax) - std::lgamma(58.0));
    CHECK(R1(0, 56, lmax) == doctest::Approx(tail1).epsilon(1e-12));
    CHECK(R2(0, 56, lmax) > 0);
    CHECK(R3(0, 56, lmax, lmax) > 0);
    CHECK(R1(1e-15, 56, lmax) > R1(0, 56, lmax));
  }

  TEST_CASE("interval widening") {
    AprioriBounds g = AprioriBounds::general_gamma();
    AprioriBounds w = widen_intervals(g, 1e-9);
    CHECK(w.beta1_min == doctest::Approx(g.beta1_min - 3e-9).epsilon(1e-15));
    CHECK(w.beta1_max == doctest::Approx(g.beta1_max + 3e-9).epsilon(1e-15));
    CHECK(w.beta2_min == doctest::Approx(g.beta2_min - 9e-9).epsilon(1e-15));
    CHECK(w.beta3_max == doctest::Approx(g.beta3_max + 6e-9).epsilon(1e-15));
    CHECK(w.phi_min == doctest::Approx(g.phi_min - 1e-9).epsilon(1e-15));
    AprioriBounds same = widen_intervals(g, 0.0);
    CHECK(same.beta1_min == g.beta1_min);
    CHECK(same.beta3_max == g.beta3_max);
    CHECK(same.phi_max == g.phi_max);
    auto b = ledger_at(1e-15);
    AprioriBounds c = AprioriBounds::certification();
    CHECK(b.widened.beta1_min <= c.beta1_min);
    CHECK(c.beta1_max <= b.widened.beta1_max);
    CHECK(b.widened.beta2_min <= c.beta2_min);
    CHECK(c.beta2_max <= b.widened.beta2_max);
    CHECK(b.widened.beta3_min <= c.beta3_min);
    CHECK(c.beta3_max <= b.widened.beta3_max);
    CHECK(b.widened.phi_min <= c.phi_min);
    CHECK(c.phi_max <= b.widened.phi_max);
  }

  TEST_CASE("slack factors") {
    auto b = ledger_at(1e-15);
    CHECK(b.sound());
    for (const auto& e : b.entries) CHECK(e.value >= 0);
    CHECK(b.log_prefactor < std::log1p(1e-7));
    CHECK(b.log_prefactor == doctest::Approx(6.4294e-8).epsilon(1e-4));
    // the unbalancing factor sits just above its published bound
    CHECK(b.log_unbalancing == doctest::Approx(1.00507e-14).epsilon(1e-4));
    auto zero = ledger_at(0.0);
    CHECK(zero.g.log_GA == 0.0);
    CHECK(zero.g.log_GB == 0.0);
    CHECK(zero.g.log_GC == 0.0);
    CHECK(zero.log_prefactor < b.log_prefactor);
  }

  TEST_CASE("ledger is nondecreasing in eps") {
    auto a = ledger_at(1e-16), b = ledger_at(1e-15), c = ledger_at(1e-12);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t k = 0; k < a.entries.size(); ++k) {
      INFO(a.entries[k].symbol);
      CHECK(a.entries[k].value <= b.entries[k].value);
      CHECK(b.entries[k].value <= c.entries[k].value);
    }
  }

  TEST_CASE("the occupancy product is below its closed-form bound") {
    const double eps = 1e-15;
    long long exponent = 0;
    long double log_product = 0;
    for (int x = 0; x <= 56; ++x) {
      exponent += x / 2;
      log_product += (x / 2) * std::log1p(static_cast<long double>(eps));
    }
    CHECK(exponent == 784);
    CHECK(56.0 / 4 * 57 == 798.0);
    auto g = g_factors(ModelParams::certification());
    CHECK(static_cast<double>(log_product) <= g.log_GB);
    CHECK(g.log_GB == doctest::Approx(798 * std::log1p(eps)).epsilon(1e-12));
  }

  TEST_CASE("interval ledger stays within the pessimistic allowance") {
    auto f = ledger_at(1e-15);
    auto i = ledger_at(1e-15, Arithmetic::interval_mode);
    CHECK(i.log_prefactor >= f.log_prefactor);
    CHECK(i.log_prefactor < std::log1p(2e-7));
    CHECK(i.R3 >= f.R3);
    CHECK(i.sound());
  }
}
