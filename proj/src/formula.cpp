#include "tsat/formula.hpp"

#include <istream>
#include <sstream>

#include "tsat/errors.hpp"
#include "tsat/numeric.hpp"

namespace tsat {

int clause_count(int n, double c) { return static_cast<int>(round_half_up(c * n)); }

Formula generate(int n, int m, Rng& rng) {
  if (n < 1 || m < 1) throw DomainError("generate: need n >= 1 and m >= 1");
  Formula f;
  f.n = n;
  f.cells.resize(3 * static_cast<std::size_t>(m));
  const auto two_n = static_cast<std::uint64_t>(2 * n);
  for (auto& cell : f.cells) {
    auto r = static_cast<int>(rng.below(two_n));
    cell = (r % 2 == 0) ? r / 2 + 1 : -(r / 2 + 1);
  }
  return f;
}

Formula generate(int n, double c, std::uint64_t seed) {
  Rng rng(seed);
  return generate(n, clause_count(n, c), rng);
}

std::string to_ocnf(const Formula& f) {
  std::ostringstream os;
  os << "p ocnf " << f.n << ' ' << f.m() << '\n';
  for (int i = 0; i < f.m(); ++i) os << f.cell(i, 0) << ' ' << f.cell(i, 1) << ' ' << f.cell(i, 2) << '\n';
  return os.str();
}

Formula parse_ocnf(std::istream& in) {
  Formula f;
  std::string line;
  int m = -1;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c") continue;
    if (tok == "p") {
      std::string fmt;
      if (!(ls >> fmt >> f.n >> m) || fmt != "ocnf" || f.n < 1 || m < 0) throw DomainError("bad ocnf header: " + line);
      continue;
    }
    if (m < 0) throw DomainError("ocnf clause before header");
    std::istringstream cs(line);
    Literal a, b, c;
    if (!(cs >> a >> b >> c)) throw DomainError("ocnf clause needs three literals: " + line);
    Literal zero;
    if (cs >> zero && zero != 0) throw DomainError("ocnf clause has more than three literals: " + line);
    for (Literal l : {a, b, c}) {
      if (l == 0 || var_of(l) > f.n) throw DomainError("ocnf literal out of range: " + line);
      f.cells.push_back(l);
    }
  }
  if (m < 0) throw DomainError("ocnf header missing");
  if (f.m() != m) throw DomainError("ocnf clause count does not match header");
  return f;
}

Formula parse_ocnf(const std::string& text) {
  std::istringstream in(text);
  return parse_ocnf(in);
}

MeasuredOmega measure_omega(const Formula& f, int x_cap) {
  if (x_cap < 0) throw DomainError("measure_omega: x_cap < 0");
  std::vector<int> total(f.n, 0), pos(f.n, 0);
  for (Literal l : f.cells) {
    ++total[var_of(l) - 1];
    if (positive(l)) ++pos[var_of(l) - 1];
  }
  MeasuredOmega w;
  w.x_cap = x_cap;
  w.n = f.n;
  w.counts.assign(tri_size(x_cap), 0);
  for (int v = 0; v < f.n; ++v) {
    if (total[v] > x_cap) {
      ++w.heavy_count;
      w.heavy_occurrences += total[v];
    } else {
      ++w.counts[tri(total[v], pos[v])];
    }
  }
  return w;
}

bool obeys(const Formula& f, const OccurrenceTable& table, double eps, int x_cap) {
  if (x_cap > table.x_max()) throw DomainError("obeys: table does not cover x_cap");
  MeasuredOmega w = measure_omega(f, x_cap);
  for (int x = 0; x <= x_cap; ++x)
    for (int p = 0; p <= x; ++p) {
      double prop = double(w.count(x, p)) / double(f.n);
      double xi = table.at(x, p);
      if (!(prop >= xi - eps && prop <= xi + eps)) return false;
    }
  return true;
}

}  // namespace tsat
