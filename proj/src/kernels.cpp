#include "tsat/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "tsat/errors.hpp"
#include "tsat/formula.hpp"
#include "tsat/pps.hpp"
#include "tsat/stationarity.hpp"

namespace tsat {

namespace {

int thread_count(Exec exec) { return exec == Exec::parallel ? omp_get_max_threads() : 1; }

}  // namespace

double OmegaCensus::mean(int x, int p) const {
  return double(sum.at(tri(x, p))) / (double(n) * formulas);
}

double OmegaCensus::stddev(int x, int p) const {
  if (formulas < 2) return 0.0;
  const double s = double(sum.at(tri(x, p))) / n;
  const double s2 = double(sum_sq.at(tri(x, p))) / (double(n) * n);
  const double var = (s2 - s * s / formulas) / (formulas - 1);
  return std::sqrt(std::max(0.0, var));
}

OmegaCensus omega_census(int n, double c, int formulas, std::uint64_t seed, int x_cap, Exec exec) {
  if (n < 1 || formulas < 1) throw DomainError("omega_census: need n >= 1 and formulas >= 1");
  OmegaCensus out;
  out.n = n;
  out.m = clause_count(n, c);
  out.formulas = formulas;
  out.x_cap = x_cap;
  out.seed = seed;
  out.sum.assign(tri_size(x_cap), 0);
  out.sum_sq.assign(tri_size(x_cap), 0);
  const Rng root(seed);
#pragma omp parallel num_threads(thread_count(exec))
  {
    std::vector<long long> sum(out.sum.size(), 0), sum_sq(out.sum.size(), 0);
    long long heavy = 0;
#pragma omp for schedule(dynamic)
    for (int f = 0; f < formulas; ++f) {
      Rng rng = root.split(static_cast<std::uint64_t>(f));
      MeasuredOmega w = measure_omega(generate(n, out.m, rng), x_cap);
      for (std::size_t k = 0; k < sum.size(); ++k) {
        sum[k] += w.counts[k];
        sum_sq[k] += w.counts[k] * w.counts[k];
      }
      heavy += w.heavy_count;
    }
#pragma omp critical
    {
      for (std::size_t k = 0; k < sum.size(); ++k) {
        out.sum[k] += sum[k];
        out.sum_sq[k] += sum_sq[k];
      }
      out.heavy += heavy;
    }
  }
  return out;
}

double GridSweep::phi(int i) const {
  return nphi == 1 ? rect.phi_lo : rect.phi_lo + (rect.phi_hi - rect.phi_lo) * i / (nphi - 1);
}

double GridSweep::beta(int j) const {
  return nbeta == 1 ? rect.beta_lo : rect.beta_lo + (rect.beta_hi - rect.beta_lo) * j / (nbeta - 1);
}

GridSweep grid_sweep(const Weights<double>& w, const Rectangle& r, int nphi, int nbeta, Exec exec) {
  if (nphi < 1 || nbeta < 1) throw DomainError("grid_sweep: empty grid");
  GridSweep g;
  g.nphi = nphi;
  g.nbeta = nbeta;
  g.rect = r;
  const std::size_t total = static_cast<std::size_t>(nphi) * nbeta;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  g.eq1.assign(total, nan);
  g.eq2.assign(total, nan);
  g.U.assign(total, nan);
  g.V.assign(total, nan);
  g.ok.assign(total, 0);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(exec))
  for (long long k = 0; k < static_cast<long long>(total); ++k) {
    const int i = static_cast<int>(k / nbeta), j = static_cast<int>(k % nbeta);
    PhiBetaPoint pt;
    try {
      static_cast<BasicPoint<double>&>(pt) = derive<double>(g.phi(i), g.beta(j));
    } catch (const DomainError&) {
      continue;
    }
    if (!(pt.V > 1)) continue;
    g.U[k] = pt.U;
    g.V[k] = pt.V;
    g.eq1[k] = eq1(pt, w);
    g.eq2[k] = eq2(pt, w);
    g.ok[k] = 1;
  }
  return g;
}

PolygonGrid polygon_grid_extrema(const AprioriBounds& b, int per_axis, Exec exec) {
  if (per_axis < 2) throw DomainError("polygon_grid_extrema: need at least 2 points per axis");
  double vmin = std::numeric_limits<double>::infinity();
  double uvmax = -std::numeric_limits<double>::infinity();
  long long points = 0;
  const double dphi = (b.phi_max - b.phi_min) / (per_axis - 1);
  const double dbeta = (b.beta1_max - b.beta1_min) / (per_axis - 1);
#pragma omp parallel for reduction(min : vmin) reduction(max : uvmax) reduction(+ : points) \
    num_threads(thread_count(exec))
  for (int i = 0; i < per_axis; ++i) {
    const double phi = b.phi_min + dphi * i;
    for (int j = 0; j < per_axis; ++j) {
      const double beta = b.beta1_min + dbeta * j;
      if (!b.contains(phi, beta)) continue;
      BasicPoint<double> pt;
      try {
        pt = derive<double>(phi, beta);
      } catch (const DomainError&) {
        continue;
      }
      vmin = std::min(vmin, pt.V);
      uvmax = std::max(uvmax, pt.U / pt.V);
      ++points;
    }
  }
  return {vmin, uvmax, points};
}

namespace {

struct CorpusItem {
  long long satisfiable = 0, no_pps = 0, pps = 0, typed = 0, flips = 0, pure_neg = 0;
};

CorpusItem check_formula(const Formula& f) {
  CorpusItem it;
  PpsCount count = enumerate_pps_detail(f);
  it.satisfiable = count.solutions > 0;
  it.no_pps = count.solutions > 0 && count.pps == 0;
  it.pps = count.pps;
  it.typed = count.type_consistent;
  std::uint64_t pure_negative = 0;
  {
    std::vector<int> pos(f.n, 0), neg(f.n, 0);
    for (Literal l : f.cells) ++(positive(l) ? pos : neg)[var_of(l) - 1];
    for (int v = 0; v < f.n; ++v)
      if (neg[v] > 0 && pos[v] == 0) pure_negative |= std::uint64_t(1) << v;
  }
  for (std::uint64_t mask : list_pps(f)) {
    if (!is_pps(f, assignment_from_mask(f.n, mask))) ++it.flips;
    if (mask & pure_negative) ++it.pure_neg;
  }
  return it;
}

}  // namespace

PpsCorpus pps_corpus_census(int n, int m, int formulas, std::uint64_t seed, Exec exec) {
  if (n > kEnumerationGuard) throw GuardError("pps_corpus_census: n exceeds the exhaustive guard");
  PpsCorpus out;
  out.n = n;
  out.m = m;
  out.formulas = formulas;
  out.seed = seed;
  long long sat = 0, no_pps = 0, pps = 0, typed = 0, flips = 0, pure_neg = 0;
  const Rng root(seed);
#pragma omp parallel for schedule(dynamic) reduction(+ : sat, no_pps, pps, typed, flips, pure_neg) \
    num_threads(thread_count(exec))
  for (int f = 0; f < formulas; ++f) {
    Rng rng = root.split(static_cast<std::uint64_t>(f));
    CorpusItem it = check_formula(generate(n, m, rng));
    sat += it.satisfiable;
    no_pps += it.no_pps;
    pps += it.pps;
    typed += it.typed;
    flips += it.flips;
    pure_neg += it.pure_neg;
  }
  out.satisfiable = sat;
  out.satisfiable_without_pps = no_pps;
  out.pps_total = pps;
  out.type_consistent_total = typed;
  out.flip_failures = flips;
  out.pure_negative_violations = pure_neg;
  return out;
}

}  // namespace tsat
