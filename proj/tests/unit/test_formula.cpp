#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>

#include "tsat/distribution.hpp"
#include "tsat/errors.hpp"
#include "tsat/formula.hpp"
#include "tsat/large_deviation.hpp"
#include "tsat/pps.hpp"

using namespace tsat;

namespace {

Formula make(int n, std::vector<Literal> cells) { return Formula{n, std::move(cells)}; }

// Every formula on n variables with m clauses, index digits in base 2n.
std::vector<Formula> all_formulas(int n, int m) {
  std::vector<Formula> out;
  long long total = 1;
  for (int i = 0; i < 3 * m; ++i) total *= 2 * n;
  for (long long idx = 0; idx < total; ++idx) {
    Formula f{n, {}};
    long long r = idx;
    for (int i = 0; i < 3 * m; ++i) {
      int d = static_cast<int>(r % (2 * n));
      r /= 2 * n;
      f.cells.push_back(d % 2 == 0 ? d / 2 + 1 : -(d / 2 + 1));
    }
    out.push_back(f);
  }
  return out;
}

}  // namespace

TEST_SUITE("formula") {
  TEST_CASE("generator size and determinism") {
    CHECK(clause_count(100, 4.506) == 451);
    CHECK(clause_count(1000, 4.506) == 4506);
    Formula a = generate(100, 4.506, 7), b = generate(100, 4.506, 7), c = generate(100, 4.506, 8);
    CHECK(a.m() == 451);
    CHECK(a == b);
    CHECK(!(a == c));
    for (Literal l : a.cells) {
      CHECK(l != 0);
      CHECK(var_of(l) <= 100);
    }
  }

  TEST_CASE("single-clause formulas on one variable are uniform") {
    Rng rng(123);
    std::map<std::vector<Literal>, int> hits;
    const int draws = 80000;
    for (int i = 0; i < draws; ++i) ++hits[generate(1, 1, rng).cells];
    CHECK(hits.size() == 8);
    for (const auto& [cells, k] : hits) CHECK(std::abs(k - draws / 8) < 500);
  }

  TEST_CASE("ocnf round trip and malformed input") {
    Formula f = generate(30, 4.506, 3);
    CHECK(parse_ocnf(to_ocnf(f)) == f);
    CHECK(parse_ocnf("c comment\np ocnf 2 1\n1 -2 2 0\n") == make(2, {1, -2, 2}));
    CHECK_THROWS_AS(parse_ocnf("p ocnf 2 1\n1 3 2\n"), DomainError);
    CHECK_THROWS_AS(parse_ocnf("p ocnf 2 2\n1 2 2\n"), DomainError);
    CHECK_THROWS_AS(parse_ocnf("1 2 2\n"), DomainError);
  }

  TEST_CASE("occurrence census examples") {
    // v1: x=3 p=2, v2: x=2 p=0, v3: x=1 p=1, v4: unused
    Formula f = make(4, {1, 1, -2, -1, -2, 3});
    auto w = measure_omega(f, 3);
    CHECK(w.count(3, 2) == 1);
    CHECK(w.count(2, 0) == 1);
    CHECK(w.count(1, 1) == 1);
    CHECK(w.count(0, 0) == 1);
    CHECK(w.heavy_count == 0);
    auto h = measure_omega(f, 2);
    CHECK(h.heavy_count == 1);
    CHECK(h.heavy_occurrences == 3);
  }

  TEST_CASE("obeys at the trivial and exact tolerances") {
    OccurrenceTable t(TableKind::typical, 4, 13.518);
    Formula f = make(4, {1, 1, -2, -1, -2, 3});
    CHECK(obeys(f, t, 1.0, 3));
    CHECK(!obeys(f, t, 0.0, 3));
    t.at(3, 2) = t.at(2, 0) = t.at(1, 1) = t.at(0, 0) = 0.25;
    CHECK(obeys(f, t, 0.0, 3));
    CHECK_THROWS_AS(obeys(f, t, 0.0, 5), DomainError);
  }

  TEST_CASE("PPS examples") {
    CHECK(enumerate_pps(make(1, {1, 1, 1})) == 1);
    CHECK(enumerate_pps(make(1, {-1, -1, -1})) == 1);
    CHECK(enumerate_pps(make(2, {1, 2, 2})) == 2);
    auto d = enumerate_pps_detail(make(2, {1, 2, 2}));
    CHECK(d.solutions == 3);
    CHECK(d.type_consistent == 1);  // x2 is true twice in its only clause
    auto unsat = enumerate_pps_detail(make(1, {1, 1, 1, -1, -1, -1}));
    CHECK(unsat.solutions == 0);
    CHECK(unsat.pps == 0);
    CHECK(list_pps(make(2, {1, 2, 2})) == std::vector<std::uint64_t>{1, 2});
    CHECK(!is_pps(make(2, {1, 2, 2}), assignment_from_mask(2, 3)));
    CHECK_THROWS_AS(enumerate_pps(Formula{25, {1, 2, 3}}), GuardError);
  }

  TEST_CASE("variable types") {
    // clauses (1 2 2) and (-1 2 -2); A = (1, 0): clause 1 has x1 uniquely true
    Formula f = make(2, {1, 2, 2, -1, 2, -2});
    Assignment a = assignment_from_mask(2, 1);
    REQUIRE(satisfies(f, a));
    auto t1 = variable_type(f, a, 1);
    CHECK(t1.x == 2);
    CHECK(t1.p == 1);
    CHECK(t1.j == 0);
    CHECK(t1.value == 1);
    auto t2 = variable_type(f, a, 2);
    CHECK(t2.x == 4);
    CHECK(t2.p == 3);
    CHECK(t2.value == 0);
    CHECK(type_consistent(f, a));
    CHECK(t2.j == 4);
    CHECK_THROWS_AS(variable_type(f, assignment_from_mask(2, 0), 1), DomainError);
  }

  TEST_CASE("totally unbalanced representative") {
    Rng rng(99);
    for (int i = 0; i < 200; ++i) {
      Formula f = generate(6, 5, rng);
      Formula r = totally_unbalanced_representative(f);
      CHECK(totally_unbalanced_representative(r) == r);
      CHECK((enumerate_pps_detail(f).solutions > 0) == (enumerate_pps_detail(r).solutions > 0));
      CHECK(enumerate_pps_detail(f).solutions == enumerate_pps_detail(r).solutions);
      CHECK(count_unbalanced(r) == count_unbalanced(f));
      auto wf = measure_omega(f, 15), wr = measure_omega(r, 15);
      for (int x = 0; x <= 15; ++x)
        for (int p = 0; p <= x; ++p) {
          long long expect = 2 * p < x ? wf.count(x, p) + wf.count(x, x - p) : 2 * p == x ? wf.count(x, p) : 0;
          CHECK(wr.count(x, p) == expect);
        }
    }
  }

  TEST_CASE("fiber size is a power of the unbalanced count") {
    for (int n = 1; n <= 3; ++n)
      for (int m = 1; m <= 2; ++m) {
        if (n == 3 && m == 2) continue;  // 46656 formulas, covered by the 2-clause cases
        for (const Formula& f : all_formulas(n, m))
          CHECK(representative_fiber_size(f) == (1LL << count_unbalanced(f)));
      }
    Rng rng(5);
    for (int i = 0; i < 300; ++i) {
      Formula f = generate(3, 2, rng);
      CHECK(representative_fiber_size(f) == (1LL << count_unbalanced(f)));
    }
  }

  TEST_CASE("pure negative variables are 0 in every PPS") {
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
      Formula f = generate(8, 20, rng);
      std::uint64_t pure_neg = 0;
      for (int v = 1; v <= f.n; ++v) {
        bool pos = false, neg = false;
        for (Literal l : f.cells)
          if (var_of(l) == v) (positive(l) ? pos : neg) = true;
        if (neg && !pos) pure_neg |= std::uint64_t(1) << (v - 1);
      }
      for (auto mask : list_pps(f)) CHECK((mask & pure_neg) == 0);
    }
  }

  TEST_CASE("large deviation exponent equals a Kullback-Leibler quadrature") {
    // KL(a || q) = integral_q^a (a - s) / (s (1 - s)) ds
    for (auto [q, t] : {std::pair{0.5, 0.1}, {0.2, 0.05}, {0.01, 0.003}}) {
      double a = q + t;
      double kl = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          [a](double s) { return (a - s) / (s * (1 - s)); }, q, a);
      CHECK(ld_h(q, t) == doctest::Approx(kl).epsilon(1e-12));
    }
    CHECK(ld_h(0.5, 0.1) == doctest::Approx(0.6 * std::log(1.2) + 0.4 * std::log(0.8)).epsilon(1e-15));
    CHECK(std::isinf(ld_h(0.3, 0.8)));
    CHECK(binomial_large_deviation(0.2, 0.05) <= ld_h(0.2, 0.05));
    double t = ld_budget(0.1, 1e6, 1e-3);
    CHECK(2 * std::exp(-binomial_large_deviation(0.1, t) * 1e6) <= 1e-3 * (1 + 1e-9));
  }
}
