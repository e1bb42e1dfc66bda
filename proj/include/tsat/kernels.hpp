#pragma once

#include <cstdint>
#include <vector>

#include "tsat/distribution.hpp"
#include "tsat/params.hpp"

namespace tsat {

// Every kernel has a serial reference and an OpenMP version that return
// identical results for the same inputs.
enum class Exec { serial, parallel };

// Integer occurrence counts summed over independently seeded formulas.
struct OmegaCensus {
  int n = 0;
  int m = 0;
  int formulas = 0;
  int x_cap = 0;
  std::uint64_t seed = 0;
  std::vector<long long> sum;     // tri(x, p)
  std::vector<long long> sum_sq;  // tri(x, p)
  long long heavy = 0;

  double mean(int x, int p) const;
  double stddev(int x, int p) const;  // sample standard deviation over formulas
};

// Formula f is generated from Rng(seed).split(f).
OmegaCensus omega_census(int n, double c, int formulas, std::uint64_t seed, int x_cap, Exec exec);

// eq1, eq2, U, V on an nphi x nbeta grid over r (both ends included).
// Singular points carry NaN and ok = 0. Row-major in phi.
struct GridSweep {
  int nphi = 0;
  int nbeta = 0;
  Rectangle rect{};
  std::vector<double> eq1, eq2, U, V;
  std::vector<char> ok;

  double phi(int i) const;
  double beta(int j) const;
  std::size_t at(int i, int j) const { return static_cast<std::size_t>(i) * nbeta + j; }
};

GridSweep grid_sweep(const Weights<double>& w, const Rectangle& r, int nphi, int nbeta, Exec exec);

// Extrema of V and U/V over grid points of the feasible polygon.
struct PolygonGrid {
  double V_min = 0;
  double UV_max = 0;
  long long points = 0;
};

PolygonGrid polygon_grid_extrema(const AprioriBounds& b, int per_axis, Exec exec);

// Exhaustive PPS checks over a random corpus.
struct PpsCorpus {
  int n = 0;
  int m = 0;
  int formulas = 0;
  std::uint64_t seed = 0;
  long long satisfiable = 0;
  long long satisfiable_without_pps = 0;
  long long pps_total = 0;
  long long type_consistent_total = 0;
  long long flip_failures = 0;            // listed PPS rejected by the flip-by-flip test
  long long pure_negative_violations = 0; // pure negative variable at 1 in a PPS
};

PpsCorpus pps_corpus_census(int n, int m, int formulas, std::uint64_t seed, Exec exec);

}  // namespace tsat
