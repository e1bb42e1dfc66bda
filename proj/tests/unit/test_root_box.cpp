#include <doctest.h>

#include <cmath>
#include <random>

#include "tsat/certificate.hpp"
#include "tsat/distribution.hpp"
#include "tsat/errors.hpp"
#include "tsat/root_box.hpp"
#include "tsat/stationarity.hpp"

using namespace tsat;

namespace {

EquationPair toy() {
  EquationPair e;
  e.eq1 = [](double p, double b) { return 1.5 - 2 * p - b; };
  e.eq2 = [](double p, double b) { return 1.5 - p - 2 * b; };
  e.eq1_enclosure = [](double p, double b) { return Interval(1.5) - Interval(2.0) * Interval(p) - Interval(b); };
  e.eq2_enclosure = [](double p, double b) { return Interval(1.5) - Interval(p) - Interval(2.0) * Interval(b); };
  return e;
}

const Rectangle kUnit{0.0, 1.0, 0.0, 1.0};

struct Model {
  ModelParams params = ModelParams::certification();
  Weights<double> w = make_weights<double>(params);
  Weights<Interval> wi = make_weights<Interval>(params);
  EquationPair eqs = stationarity_equations(w, &wi);
  Rectangle domain = domain_of(params.a_priori);
};

const Model& model() {
  static const Model m;
  return m;
}

const ExclusionTrace& certified_trace() {
  static const ExclusionTrace t = spiral_localize(model().eqs, model().domain, 1e-7);
  return t;
}

}  // namespace

TEST_SUITE("root_box") {
  TEST_CASE("toy linear system") {
    auto ref = solve_reference(toy(), kUnit);
    REQUIRE(ref.found);
    CHECK(ref.phi == 0.5);
    CHECK(ref.beta1 == 0.5);
    auto t = spiral_localize(toy(), kUnit, 1e-6);
    CHECK(t.rectangle().contains(0.5, 0.5));
    CHECK(t.rectangle().phi_width() <= 1e-6);
    CHECK(verify_exclusion(t, toy()).ok);
    auto ti = spiral_localize(toy(), kUnit, 1e-6, kDeltaNum, 1000, true);
    CHECK(verify_exclusion(ti, toy(), true).ok);
  }

  TEST_CASE("empty trace verifies only the corner seeds") {
    ExclusionTrace t;
    t.domain = kUnit;
    t.phi_minus = {0.0};
    t.beta_plus = {1.0};
    t.phi_plus = {1.0};
    t.beta_minus = {0.0};
    CHECK(t.K() == 0);
    CHECK(t.L() == 0);
    auto r = verify_exclusion(t, toy());
    CHECK(r.ok);
    CHECK(r.checks.size() == 2);
    CHECK(t.rectangle().contains(kUnit));
  }

  TEST_CASE("a wrong witness is reported with its index and family") {
    auto t = spiral_localize(toy(), kUnit, 1e-3);
    REQUIRE(t.K() >= 2);
    // move the first minus witness to just below the second: eq1 there is negative
    ExclusionTrace bad = t;
    bad.phi_minus[1] = std::nextafter(t.phi_minus[2], 0.0);
    auto r = verify_exclusion(bad, toy());
    CHECK(!r.ok);
    CHECK(r.failing_index == 1);
    CHECK(r.failing_family == SignFamily::eq1_minus);
    CHECK(r.message.find("eq1_minus") != std::string::npos);
    EquationPair flipped = toy();
    flipped.eq2 = [](double p, double b) { return -(1.5 - p - 2 * b); };
    auto r2 = verify_exclusion(t, flipped);
    CHECK(!r2.ok);
    CHECK(r2.failing_family == SignFamily::eq2_minus);
    CHECK(r2.failing_index == 0);
  }

  TEST_CASE("structural errors") {
    auto t = spiral_localize(toy(), kUnit, 1e-2);
    ExclusionTrace moved = t;
    moved.phi_minus[0] = 0.01;
    CHECK_THROWS_AS(verify_exclusion(moved, toy()), StructuralError);
    ExclusionTrace uneven = t;
    uneven.beta_plus.pop_back();
    CHECK_THROWS_AS(verify_exclusion(uneven, toy()), StructuralError);
    if (t.K() >= 2) {
      ExclusionTrace flat = t;
      flat.phi_minus[2] = flat.phi_minus[1];
      CHECK_THROWS_AS(verify_exclusion(flat, toy()), StructuralError);
    }
    EquationPair no_enc = toy();
    no_enc.eq1_enclosure = nullptr;
    CHECK_THROWS_AS(verify_exclusion(t, no_enc, true), StructuralError);
  }

  TEST_CASE("spiral refuses to start without corner seeds") {
    EquationPair e = toy();
    e.eq1 = [](double, double) { return -1.0; };
    CHECK_THROWS_AS(spiral_localize(e, kUnit, 1e-3), DomainError);
  }

  TEST_CASE("coarse target takes few steps") {
    auto t = spiral_localize(model().eqs, model().domain, 0.05);
    CHECK(t.K() <= 8);
    CHECK(t.L() <= 8);
    CHECK(t.diagnostic.find("target reached") != std::string::npos);
  }

  TEST_CASE("certified trace: nesting, determinism and verification") {
    const auto& t = certified_trace();
    auto r = t.rectangle();
    CHECK(r.phi_width() <= 1e-7);
    CHECK(r.beta_width() <= 1e-7);
    CHECK(verify_exclusion(t, model().eqs).ok);
    auto coarse = spiral_localize(model().eqs, model().domain, 4e-7);
    CHECK(coarse.rectangle().contains(r));
    auto again = spiral_localize(model().eqs, model().domain, 1e-7);
    CHECK(again.phi_minus == t.phi_minus);
    CHECK(again.beta_minus == t.beta_minus);
    CHECK(again.phi_plus == t.phi_plus);
    CHECK(again.beta_plus == t.beta_plus);
    auto ref = solve_reference(model().eqs, r);
    REQUIRE(ref.found);
    CHECK(r.contains(ref.phi, ref.beta1));
    CHECK(std::fabs(ref.residual1) < 1e-9);
    CHECK(std::fabs(ref.residual2) < 1e-9);
  }

  TEST_CASE("monotone sign preservation on ordered pairs") {
    const auto& eqs = model().eqs;
    const auto& d = model().domain;
    const auto& b = model().params.a_priori;
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> up(d.phi_lo, d.phi_hi), ub(d.beta_lo, d.beta_hi);
    int pairs = 0;
    while (pairs < 10000) {
      double p1 = up(gen), p2 = up(gen), b1 = ub(gen), b2 = ub(gen);
      double pa = std::max(p1, p2), pb = std::min(p1, p2), ba = std::max(b1, b2), bb = std::min(b1, b2);
      if (!b.contains(pa, ba) || !b.contains(pb, bb)) continue;
      double a1, a2, c1, c2;
      try {
        a1 = eqs.eq1(pa, ba);
        a2 = eqs.eq2(pa, ba);
        c1 = eqs.eq1(pb, bb);
        c2 = eqs.eq2(pb, bb);
      } catch (const DomainError&) {
        continue;
      }
      ++pairs;
      if (a2 > 0) CHECK(c2 > 0);
      if (a1 > 0) CHECK(c1 > 0);
    }
  }

  TEST_CASE("every excluded strip stays away from a common zero") {
    const auto& t = certified_trace();
    const auto& eqs = model().eqs;
    const auto& b = model().params.a_priori;
    std::mt19937_64 gen(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto sample_strip = [&](double plo, double phi_hi, double blo, double bhi) {
      int seen = 0;
      for (int k = 0; k < 400 && seen < 100; ++k) {
        double p = plo + (phi_hi - plo) * u(gen), be = blo + (bhi - blo) * u(gen);
        if (!b.contains(p, be)) continue;
        double e1, e2;
        try {
          e1 = eqs.eq1(p, be);
          e2 = eqs.eq2(p, be);
        } catch (const DomainError&) {
          continue;
        }
        ++seen;
        CHECK(std::max(std::fabs(e1), std::fabs(e2)) > kDeltaNum);
      }
    };
    const double beta_floor = t.beta_minus.back(), beta_ceiling = t.beta_plus.back();
    for (int i = 0; i < t.K(); ++i) sample_strip(t.phi_minus[i], t.phi_minus[i + 1], beta_floor, t.beta_plus[i]);
    for (int j = 0; j < t.L(); ++j) sample_strip(t.phi_plus[j + 1], t.phi_plus[j], t.beta_minus[j], beta_ceiling);
  }
}
