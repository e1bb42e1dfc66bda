#pragma once

#include <vector>

#include "tsat/interval.hpp"
#include "tsat/params.hpp"

namespace tsat {

// Index of (x, p), 0 <= p <= x, in a row-major triangle.
inline constexpr int tri(int x, int p) { return x * (x + 1) / 2 + p; }
inline constexpr int tri_size(int x_max) { return (x_max + 1) * (x_max + 2) / 2; }

double poisson_mass(int x, double lambda);
double log_kappa(int x, int p, double lambda);
double kappa(int x, int p, double lambda);
double kappa_tilde(int x, int p, double lambda);

enum class TableKind { typical, unbalanced, measured };

class OccurrenceTable {
 public:
  OccurrenceTable() = default;
  OccurrenceTable(TableKind kind, int x_max, double lambda);

  TableKind kind() const { return kind_; }
  int x_max() const { return x_max_; }
  double lambda() const { return lambda_; }
  double at(int x, int p) const { return values_.at(tri(x, p)); }
  double& at(int x, int p) { return values_.at(tri(x, p)); }
  double total() const;

 private:
  TableKind kind_ = TableKind::typical;
  int x_max_ = 0;
  double lambda_ = 0;
  std::vector<double> values_;
};

inline double P2(double xi) { return xi * (xi + 1) * (xi + 2) / 3; }
inline double P3(double xi) { return xi * (xi + 2) * (2 * xi + 3) / 8; }
inline long long D_count(int x_max) { return static_cast<long long>(x_max + 1) * (x_max + 2) / 2; }
inline long long N_count(int x_max) {
  long long x = x_max;
  return (x + 2) * (4 * x * x + 13 * x + 12) / 24;
}

struct DerivedConstants {
  double rho = 0;
  double delta = 0;
  long long D = 0;
  long long N = 0;
  double K_tilde = 0;
};

// Sum over 2p > x_max of kappa(2p, p), explicit up to 2p = 400 plus a geometric tail bound.
double rho_tail(double lambda, int x_max);

struct Tables {
  ModelParams params;
  OccurrenceTable typical;
  OccurrenceTable unbalanced;
  DerivedConstants consts;

  double H_tilde(int x, int p) const { return (x - 2 * p) * unbalanced.at(x, p); }
};

// Validates params (ConfigError on failure) and builds all tables.
Tables build_tables(const ModelParams& params);

// Flattened unbalanced weights in double or interval arithmetic, with the
// constants the stationarity kernels need. kt is zero where x < 2p.
template <class T>
struct Weights {
  int x_max = 0;
  T c{};
  T lambda{};
  std::vector<T> kt;
  std::vector<T> log_kt;
  T K_tilde{};
  // c log 3 + lambda log(lambda/6e) + log 2 sum_{x>2p} kt - sum kt log(p!(x-p)! kt)
  T base_log_rate{};
};

template <class T>
Weights<T> make_weights(const ModelParams& params);

extern template Weights<double> make_weights<double>(const ModelParams&);
extern template Weights<Interval> make_weights<Interval>(const ModelParams&);

}  // namespace tsat
