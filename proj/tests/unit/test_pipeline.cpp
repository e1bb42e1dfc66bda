#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <cstring>

#include "tsat/certificate.hpp"
#include "tsat/errors.hpp"
#include "tsat/kernels.hpp"
#include "tsat/monotone.hpp"
#include "tsat/oracle.hpp"
#include "tsat/reports.hpp"
#include "tsat/stationarity.hpp"

using namespace tsat;

namespace {

const Certificate& float_cert() {
  static const Certificate c = certify(4.506, 56, 1e-15);
  return c;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

nlohmann::json without_timestamp(nlohmann::json j) {
  j["provenance"].erase("timestamp");
  return j;
}

}  // namespace

TEST_SUITE("certificate") {
  TEST_CASE("default parameters certify") {
    const auto& c = float_cert();
    CHECK(c.verdict);
    CHECK(c.failing_stage.empty());
    CHECK(c.rate < 1);
    CHECK(c.rate == doctest::Approx(0.999926720948).epsilon(1e-11));
    CHECK(c.rectangle.contains(c.root.phi, c.root.beta1));
    CHECK(c.root.phi == doctest::Approx(0.5638322754).epsilon(1e-9));
    CHECK(c.root.beta1 == doctest::Approx(0.4465145417).epsilon(1e-9));
    CHECK(c.trace.K() == 49);
    CHECK(c.trace.L() == 49);
  }

  TEST_CASE("lower density is not certified and names the stage") {
    auto c = certify(4.2, 56, 1e-15);
    CHECK(!c.verdict);
    CHECK(!c.failing_stage.empty());
    CHECK(c.rate > 1);
  }

  TEST_CASE("other truncation degrees") {
    CHECK(certify(4.506, 54, 1e-15).verdict);
    CHECK_THROWS_AS(certify(4.506, 2, 1e-15), ConfigError);
  }

  TEST_CASE("json replay and determinism") {
    const auto& c = float_cert();
    auto j = to_json(c);
    auto r = replay(j);
    CHECK(r.trace_ok);
    CHECK(r.matches);
    CHECK(r.verdict);
    auto again = to_json(certify(4.506, 56, 1e-15));
    CHECK(without_timestamp(j) == without_timestamp(again));
    // a tampered trace no longer replays
    auto bad = j;
    bad["trace"]["phi_minus"][1] = bad["trace"]["phi_minus"][2];
    bool rejected = false;
    try {
      rejected = !replay(bad).matches;
    } catch (const StructuralError&) {
      rejected = true;
    }
    CHECK(rejected);
    CHECK(decimal_string(0.1) == "0.10000000000000001");
  }

  TEST_CASE("interval mode agrees with float mode") {
    auto i = certify(4.506, 56, 1e-15, Arithmetic::interval_mode);
    CHECK(i.verdict);
    CHECK(i.rate >= float_cert().rate);
    CHECK(i.rate == doctest::Approx(float_cert().rate).epsilon(1e-9));
    CHECK(replay(to_json(i)).matches);
  }
}

TEST_SUITE("reports") {
  TEST_CASE("loci cross inside the certified rectangle") {
    auto pts = emit_curves(ModelParams::certification(), 400);
    REQUIRE(pts.size() == 400);
    const auto& rect = float_cert().rectangle;
    bool crossed = false;
    double prev_phi = NAN;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (std::isfinite(pts[k].phi_eq1)) {
        if (std::isfinite(prev_phi)) CHECK(pts[k].phi_eq1 < prev_phi);
        prev_phi = pts[k].phi_eq1;
      }
      if (k == 0) continue;
      const auto &a = pts[k - 1], &b = pts[k];
      if (!(std::isfinite(a.phi_eq1) && std::isfinite(a.phi_eq2) && std::isfinite(b.phi_eq1) &&
            std::isfinite(b.phi_eq2)))
        continue;
      if ((a.phi_eq1 - a.phi_eq2) * (b.phi_eq1 - b.phi_eq2) <= 0) {
        crossed = true;
        CHECK(a.beta1 <= rect.beta_hi);
        CHECK(b.beta1 >= rect.beta_lo);
      }
    }
    CHECK(crossed);
    auto small = emit_curves(ModelParams::certification(), 10);
    CHECK(small.size() == 10);
    auto csv = curves_csv(small);
    CHECK(csv.rfind("beta1,phi_eq1,phi_eq2\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);
  }

  TEST_CASE("empirical reports are reproducible") {
    auto a = empirical_report(2000, 4.506, 8, 99, Exec::parallel, 50'000'000, 8, 50);
    auto b = empirical_report(2000, 4.506, 8, 99, Exec::serial, 50'000'000, 8, 50);
    CHECK(a.csv() == b.csv());
    CHECK(!a.partial);
    auto cut = empirical_report(2000, 4.506, 8, 99, Exec::serial, 4000, 8, 50);
    CHECK(cut.partial);
    CHECK(cut.formulas == 2);
  }

  TEST_CASE("counting oracle") {
    auto r = counting_oracle(2, 1);
    CHECK(r.ok());
    CHECK(r.rows.size() == 9);
    CHECK(r.pps_pairs == 70);
    CHECK(r.type_consistent_pairs == 62);
    CHECK(r.max_ratio == doctest::Approx(1.0));
    auto s = counting_oracle(1, 1);
    CHECK(s.rows.size() == 3);
    CHECK(s.pps_pairs == 8);
    CHECK(s.type_consistent_pairs == 7);
    CHECK_THROWS_AS(counting_oracle(4, 1), GuardError);
    CHECK_THROWS_AS(counting_oracle(2, 3), GuardError);
  }
}

TEST_SUITE("kernels") {
  TEST_CASE("occurrence census") {
    auto s = omega_census(3000, 4.506, 12, 5, 10, Exec::serial);
    auto p = omega_census(3000, 4.506, 12, 5, 10, Exec::parallel);
    CHECK(s.sum == p.sum);
    CHECK(s.sum_sq == p.sum_sq);
    CHECK(s.heavy == p.heavy);
    long long total = s.heavy;
    for (long long v : s.sum) total += v;
    CHECK(total == 3000LL * 12);
  }

  TEST_CASE("grid sweep") {
    auto params = ModelParams::certification();
    auto w = make_weights<double>(params);
    auto r = domain_of(params.a_priori);
    auto s = grid_sweep(w, r, 17, 13, Exec::serial);
    auto p = grid_sweep(w, r, 17, 13, Exec::parallel);
    CHECK(same_bits(s.eq1, p.eq1));
    CHECK(same_bits(s.eq2, p.eq2));
    CHECK(same_bits(s.U, p.U));
    CHECK(s.ok == p.ok);
    CHECK(s.phi(16) == r.phi_hi);
    CHECK(s.beta(0) == r.beta_lo);
  }

  TEST_CASE("polygon grid never beats the analytic extrema") {
    auto b = AprioriBounds::certification();
    auto s = polygon_grid_extrema(b, 1000, Exec::parallel);
    auto t = polygon_grid_extrema(b, 200, Exec::serial);
    auto u = polygon_grid_extrema(b, 200, Exec::parallel);
    CHECK(t.V_min == u.V_min);
    CHECK(t.UV_max == u.UV_max);
    CHECK(t.points == u.points);
    CHECK(s.points > 100000);
    CHECK(s.V_min >= V_min2(b) - 1e-9);
    CHECK(s.UV_max <= UV_max2(b) + 1e-9);
  }

  TEST_CASE("PPS corpus") {
    auto s = pps_corpus_census(10, 45, 300, 77, Exec::serial);
    auto p = pps_corpus_census(10, 45, 300, 77, Exec::parallel);
    CHECK(s.satisfiable == p.satisfiable);
    CHECK(s.pps_total == p.pps_total);
    CHECK(s.type_consistent_total == p.type_consistent_total);
    CHECK(s.satisfiable_without_pps == 0);
    CHECK(s.flip_failures == 0);
    CHECK(s.pure_negative_violations == 0);
    CHECK(s.type_consistent_total <= s.pps_total);
    CHECK_THROWS_AS(pps_corpus_census(30, 10, 1, 1, Exec::serial), GuardError);
  }
}
