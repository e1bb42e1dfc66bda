#pragma once

#include <cstdint>
#include <vector>

#include "tsat/formula.hpp"

namespace tsat {

inline constexpr int kEnumerationGuard = 24;

bool satisfies(const Formula& f, const Assignment& a);

// Satisfying, and no variable set to 1 can be flipped alone without
// unsatisfying some clause.
bool is_pps(const Formula& f, const Assignment& a);

struct PpsCount {
  long long solutions = 0;
  long long pps = 0;
  // PPSs in which every variable set to 1 is the unique true literal of
  // some clause with exactly one true literal (the counting model's notion).
  long long type_consistent = 0;
};

// Exhaustive over 2^n assignments; throws GuardError when n > 24.
long long enumerate_pps(const Formula& f);
PpsCount enumerate_pps_detail(const Formula& f);
// Bit masks of every PPS, in increasing order.
std::vector<std::uint64_t> list_pps(const Formula& f);

// Assignment whose bit v-1 is the value of variable v.
Assignment assignment_from_mask(int n, std::uint64_t mask);

struct VariableType {
  int x = 0;
  int p = 0;
  int j = 0;
  int value = 0;
};

// A must satisfy f; v is 1-based.
VariableType variable_type(const Formula& f, const Assignment& a, int v);
bool type_consistent(const Formula& f, const Assignment& a);

// Flip the sign of every occurrence of each variable whose bit is set in mask.
Formula rename(const Formula& f, std::uint64_t mask);
Formula totally_unbalanced_representative(const Formula& f);
int count_unbalanced(const Formula& f);

// Number of distinct renamings G of f with the same representative as f.
long long representative_fiber_size(const Formula& f);

}  // namespace tsat
