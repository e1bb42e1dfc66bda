#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tsat/distribution.hpp"
#include "tsat/rng.hpp"

namespace tsat {

// Literal +v or -v, v in 1..n.
using Literal = int;

inline int var_of(Literal l) { return l > 0 ? l : -l; }
inline bool positive(Literal l) { return l > 0; }

// Ordered-clauses formula: m clauses of three cells each, duplicates allowed.
struct Formula {
  int n = 0;
  std::vector<Literal> cells;

  int m() const { return static_cast<int>(cells.size() / 3); }
  Literal cell(int clause, int k) const { return cells[3 * clause + k]; }
  bool operator==(const Formula&) const = default;
};

using Assignment = std::vector<bool>;

inline bool literal_value(const Assignment& a, Literal l) { return positive(l) ? a[var_of(l) - 1] : !a[var_of(l) - 1]; }

// round-half-up(c n)
int clause_count(int n, double c);

Formula generate(int n, double c, std::uint64_t seed);
Formula generate(int n, int m, Rng& rng);

std::string to_ocnf(const Formula& f);
Formula parse_ocnf(std::istream& in);
Formula parse_ocnf(const std::string& text);

struct MeasuredOmega {
  int x_cap = 0;
  long long n = 0;
  std::vector<long long> counts;  // tri(x, p)
  long long heavy_count = 0;
  long long heavy_occurrences = 0;

  long long count(int x, int p) const { return counts.at(tri(x, p)); }
};

MeasuredOmega measure_omega(const Formula& f, int x_cap);

bool obeys(const Formula& f, const OccurrenceTable& table, double eps, int x_cap);

}  // namespace tsat
