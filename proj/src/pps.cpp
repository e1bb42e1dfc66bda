#include "tsat/pps.hpp"

#include <bit>
#include <set>

#include "tsat/errors.hpp"

namespace tsat {

namespace {

struct ClauseMask {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
};

std::vector<ClauseMask> clause_masks(const Formula& f) {
  std::vector<ClauseMask> out(f.m());
  for (int i = 0; i < f.m(); ++i)
    for (int k = 0; k < 3; ++k) {
      Literal l = f.cell(i, k);
      std::uint64_t bit = std::uint64_t(1) << (var_of(l) - 1);
      (positive(l) ? out[i].pos : out[i].neg) |= bit;
    }
  return out;
}

void occurrence_counts(const Formula& f, std::vector<int>& total, std::vector<int>& pos) {
  total.assign(f.n, 0);
  pos.assign(f.n, 0);
  for (Literal l : f.cells) {
    ++total[var_of(l) - 1];
    if (positive(l)) ++pos[var_of(l) - 1];
  }
}

// q_v: clauses with exactly one true cell whose true cell is a literal of v.
std::vector<int> unique_true_counts(const Formula& f, const Assignment& a) {
  std::vector<int> q(f.n, 0);
  for (int i = 0; i < f.m(); ++i) {
    int trues = 0, who = -1;
    for (int k = 0; k < 3; ++k)
      if (literal_value(a, f.cell(i, k))) {
        ++trues;
        who = var_of(f.cell(i, k)) - 1;
      }
    if (trues == 1) ++q[who];
  }
  return q;
}

}  // namespace

bool satisfies(const Formula& f, const Assignment& a) {
  for (int i = 0; i < f.m(); ++i) {
    bool sat = false;
    for (int k = 0; k < 3 && !sat; ++k) sat = literal_value(a, f.cell(i, k));
    if (!sat) return false;
  }
  return true;
}

bool is_pps(const Formula& f, const Assignment& a) {
  if (static_cast<int>(a.size()) != f.n) throw DomainError("assignment length differs from n");
  if (!satisfies(f, a)) return false;
  Assignment b = a;
  for (int v = 0; v < f.n; ++v) {
    if (!a[v]) continue;
    b[v] = false;
    bool still = satisfies(f, b);
    b[v] = true;
    if (still) return false;
  }
  return true;
}

Assignment assignment_from_mask(int n, std::uint64_t mask) {
  Assignment a(n);
  for (int v = 0; v < n; ++v) a[v] = (mask >> v) & 1;
  return a;
}

namespace {

PpsCount scan(const Formula& f, std::vector<std::uint64_t>* found) {
  if (f.n > kEnumerationGuard)
    throw GuardError("enumerate_pps: n = " + std::to_string(f.n) + " exceeds the exhaustive guard of 24");
  const auto masks = clause_masks(f);
  const std::uint64_t all = (std::uint64_t(1) << f.n) - 1;
  PpsCount out;
  for (std::uint64_t a = 0; a <= all; ++a) {
    std::uint64_t blocked = 0, unique_blocked = 0;
    bool sat = true;
    for (const auto& c : masks) {
      std::uint64_t t = (a & c.pos) | (~a & all & c.neg);
      if (t == 0) {
        sat = false;
        break;
      }
      if (std::has_single_bit(t) && !(t & c.neg)) blocked |= t;
    }
    if (!sat) continue;
    ++out.solutions;
    if ((a & ~blocked) != 0) continue;
    ++out.pps;
    if (found) found->push_back(a);
    // Unique true cell: the single true variable must occur exactly once
    // positively in the clause and not negatively.
    for (int i = 0; i < f.m(); ++i) {
      int trues = 0, who = 0;
      for (int k = 0; k < 3; ++k) {
        Literal l = f.cell(i, k);
        bool val = positive(l) ? (a >> (var_of(l) - 1)) & 1 : !((a >> (var_of(l) - 1)) & 1);
        if (val) {
          ++trues;
          who = var_of(l);
        }
      }
      if (trues == 1) unique_blocked |= std::uint64_t(1) << (who - 1);
    }
    if ((a & ~unique_blocked) == 0) ++out.type_consistent;
  }
  return out;
}

}  // namespace

PpsCount enumerate_pps_detail(const Formula& f) { return scan(f, nullptr); }

std::vector<std::uint64_t> list_pps(const Formula& f) {
  std::vector<std::uint64_t> out;
  scan(f, &out);
  return out;
}

long long enumerate_pps(const Formula& f) { return enumerate_pps_detail(f).pps; }

VariableType variable_type(const Formula& f, const Assignment& a, int v) {
  if (v < 1 || v > f.n) throw DomainError("variable_type: variable out of range");
  if (!satisfies(f, a)) throw DomainError("variable_type: assignment is not a solution");
  std::vector<int> total, pos;
  occurrence_counts(f, total, pos);
  int q = unique_true_counts(f, a)[v - 1];
  VariableType t;
  t.x = total[v - 1];
  t.p = pos[v - 1];
  t.j = a[v - 1] ? t.p - q : t.p + q;
  t.value = t.j < t.p ? 1 : 0;
  return t;
}

bool type_consistent(const Formula& f, const Assignment& a) {
  if (!satisfies(f, a)) return false;
  auto q = unique_true_counts(f, a);
  for (int v = 0; v < f.n; ++v)
    if (a[v] && q[v] == 0) return false;
  return true;
}

Formula rename(const Formula& f, std::uint64_t mask) {
  Formula g = f;
  for (Literal& l : g.cells)
    if ((mask >> (var_of(l) - 1)) & 1) l = -l;
  return g;
}

Formula totally_unbalanced_representative(const Formula& f) {
  std::vector<int> total, pos;
  occurrence_counts(f, total, pos);
  Formula g = f;
  for (Literal& l : g.cells) {
    int v = var_of(l) - 1;
    if (2 * pos[v] > total[v]) l = -l;
  }
  return g;
}

int count_unbalanced(const Formula& f) {
  std::vector<int> total, pos;
  occurrence_counts(f, total, pos);
  int u = 0;
  for (int v = 0; v < f.n; ++v) u += (2 * pos[v] != total[v]);
  return u;
}

long long representative_fiber_size(const Formula& f) {
  if (f.n > 20) throw GuardError("representative_fiber_size: n > 20");
  const Formula rep = totally_unbalanced_representative(f);
  std::set<std::vector<Literal>> seen;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << f.n); ++mask) {
    Formula g = rename(f, mask);
    if (totally_unbalanced_representative(g) == rep) seen.insert(g.cells);
  }
  return static_cast<long long>(seen.size());
}

}  // namespace tsat
