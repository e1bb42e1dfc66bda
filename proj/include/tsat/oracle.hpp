#pragma once

#include <string>
#include <vector>

#include "tsat/numeric.hpp"

namespace tsat {

// One (gamma, mu) signature of (formula, PPS) pairs. With every variable
// light (x_max >= 3m) the heavy-variable factor eta is 1.
struct OracleRow {
  std::string signature;  // "m1,m2,m3|x:p:j=count;..."
  long long count = 0;    // type-consistent (F, A) pairs with this signature
  BigInt bound;           // A_n B_n M1 M2 M3
};

struct OracleReport {
  int n = 0;
  int m = 0;
  long long formulas = 0;
  long long pps_pairs = 0;               // all (F, A) with A a PPS of F
  long long type_consistent_pairs = 0;   // the pairs the counting bound covers
  long long pps_pairs_by_assignment = 0; // sum over A of #{F : A is a PPS of F}
  long long violations = 0;
  double max_ratio = 0;                  // max count / bound
  std::vector<OracleRow> rows;

  bool ok() const { return violations == 0 && pps_pairs == pps_pairs_by_assignment; }
};

// Exact bound A_n B_n M1 M2 M3 for clause type counts m1..m3 and per-variable
// (x, p, j) types; n = types.size().
struct TypeTriple {
  int x, p, j;
  auto operator<=>(const TypeTriple&) const = default;
};
BigInt counting_bound(int m1, int m2, int m3, const std::vector<TypeTriple>& types);

// Exhaustive over all (2n)^(3m) formulas and 2^n assignments.
// Throws GuardError unless 1 <= n <= 3 and 1 <= m <= 2.
OracleReport counting_oracle(int n, int m);

}  // namespace tsat
