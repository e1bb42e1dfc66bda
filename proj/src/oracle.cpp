#include "tsat/oracle.hpp"

#include <cstdint>
#include <algorithm>
#include <map>
#include <sstream>

#include "tsat/errors.hpp"
#include "tsat/formula.hpp"
#include "tsat/pps.hpp"

namespace tsat {

BigInt counting_bound(int m1, int m2, int m3, const std::vector<TypeTriple>& types) {
  const int m = m1 + m2 + m3;
  const int trues = m1 + 2 * m2 + 3 * m3;
  BigInt a = exact_factorial(m) / (exact_factorial(m1) * exact_factorial(m2) * exact_factorial(m3));
  a *= boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(m1 + m2));

  std::map<TypeTriple, int> groups;
  for (const auto& t : types) ++groups[t];
  BigInt b = exact_factorial(static_cast<unsigned>(types.size()));
  for (const auto& [t, k] : groups) b /= exact_factorial(k);

  BigInt d1 = 1, d2 = 1, d3 = 1;
  for (const auto& t : types) {
    if (t.j < t.p) {
      d1 *= exact_factorial(t.p - t.j);
      d2 *= exact_factorial(t.j);
      d3 *= exact_factorial(t.x - t.p);
    } else {
      d1 *= exact_factorial(t.j - t.p);
      d2 *= exact_factorial(t.x - t.j);
      d3 *= exact_factorial(t.p);
    }
  }
  BigInt M1 = exact_factorial(m1) / d1;
  BigInt M2 = exact_factorial(trues - m1) / d2;
  BigInt M3 = exact_factorial(3 * m - trues) / d3;
  return a * b * M1 * M2 * M3;
}

namespace {

Formula formula_from_index(int n, int m, long long idx) {
  Formula f;
  f.n = n;
  f.cells.resize(3 * m);
  for (auto& cell : f.cells) {
    int d = static_cast<int>(idx % (2 * n));
    idx /= 2 * n;
    cell = (d % 2 == 0) ? d / 2 + 1 : -(d / 2 + 1);
  }
  return f;
}

}  // namespace

OracleReport counting_oracle(int n, int m) {
  if (n < 1 || n > 3 || m < 1 || m > 2)
    throw GuardError("counting_oracle: instance too large (need 1 <= n <= 3 and 1 <= m <= 2)");
  OracleReport r;
  r.n = n;
  r.m = m;
  long long total = 1;
  for (int k = 0; k < 3 * m; ++k) total *= 2 * n;
  r.formulas = total;

  struct Group {
    long long count = 0;
    int m1 = 0, m2 = 0, m3 = 0;
    std::vector<TypeTriple> types;
  };
  std::map<std::string, Group> groups;
  for (long long idx = 0; idx < total; ++idx) {
    Formula f = formula_from_index(n, m, idx);
    for (std::uint64_t mask : list_pps(f)) {
      ++r.pps_pairs;
      Assignment a = assignment_from_mask(n, mask);
      if (!type_consistent(f, a)) continue;
      ++r.type_consistent_pairs;
      int mj[4] = {0, 0, 0, 0};
      for (int i = 0; i < m; ++i) {
        int t = 0;
        for (int k = 0; k < 3; ++k) t += literal_value(a, f.cell(i, k));
        ++mj[t];
      }
      std::vector<TypeTriple> types;
      for (int v = 1; v <= n; ++v) {
        VariableType vt = variable_type(f, a, v);
        types.push_back({vt.x, vt.p, vt.j});
      }
      std::sort(types.begin(), types.end());
      std::ostringstream key;
      key << mj[1] << ',' << mj[2] << ',' << mj[3] << '|';
      for (std::size_t k = 0; k < types.size(); ++k)
        key << (k ? ";" : "") << types[k].x << ':' << types[k].p << ':' << types[k].j;
      Group& g = groups[key.str()];
      if (g.count == 0) {
        g.m1 = mj[1];
        g.m2 = mj[2];
        g.m3 = mj[3];
        g.types = types;
      }
      ++g.count;
    }
  }
  // Double counting: assignments outer, formulas inner.
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
    Assignment a = assignment_from_mask(n, mask);
    for (long long idx = 0; idx < total; ++idx)
      r.pps_pairs_by_assignment += is_pps(formula_from_index(n, m, idx), a);
  }
  for (auto& [key, g] : groups) {
    OracleRow row;
    row.signature = key;
    row.count = g.count;
    row.bound = counting_bound(g.m1, g.m2, g.m3, g.types);
    if (BigInt(g.count) > row.bound) ++r.violations;
    double ratio = double(g.count) / row.bound.convert_to<double>();
    if (ratio > r.max_ratio) r.max_ratio = ratio;
    r.rows.push_back(std::move(row));
  }
  return r;
}

}  // namespace tsat
