#include "tsat/root_box.hpp"

#include <cmath>
#include <sstream>

#include "tsat/errors.hpp"

namespace tsat {

const char* to_string(SignFamily f) {
  switch (f) {
    case SignFamily::eq1_minus: return "eq1_minus";
    case SignFamily::eq2_minus: return "eq2_minus";
    case SignFamily::eq1_plus: return "eq1_plus";
    case SignFamily::eq2_plus: return "eq2_plus";
  }
  return "?";
}

Rectangle ExclusionTrace::rectangle() const {
  return {phi_minus.back(), phi_plus.back(), beta_minus.back(), beta_plus.back()};
}

namespace {

void check_structure(const ExclusionTrace& t) {
  if (t.phi_minus.empty() || t.phi_minus.size() != t.beta_plus.size())
    throw StructuralError("trace: phi_minus and beta_plus must be non-empty and of equal length");
  if (t.phi_plus.empty() || t.phi_plus.size() != t.beta_minus.size())
    throw StructuralError("trace: phi_plus and beta_minus must be non-empty and of equal length");
  if (t.phi_minus[0] != t.domain.phi_lo || t.beta_plus[0] != t.domain.beta_hi || t.phi_plus[0] != t.domain.phi_hi ||
      t.beta_minus[0] != t.domain.beta_lo)
    throw StructuralError("trace: sequences are not anchored at the domain corners");
  for (std::size_t i = 1; i < t.phi_minus.size(); ++i)
    if (!(t.phi_minus[i] > t.phi_minus[i - 1] && t.beta_plus[i] < t.beta_plus[i - 1]))
      throw StructuralError("trace: minus-side sequences not strictly monotone at index " + std::to_string(i));
  for (std::size_t j = 1; j < t.phi_plus.size(); ++j)
    if (!(t.phi_plus[j] < t.phi_plus[j - 1] && t.beta_minus[j] > t.beta_minus[j - 1]))
      throw StructuralError("trace: plus-side sequences not strictly monotone at index " + std::to_string(j));
}

// Value enclosure of one equation; singular points give an empty-sign result.
bool evaluate(const EquationPair& eqs, int which, double phi, double beta1, bool enclosure, Interval& out) {
  try {
    if (enclosure) {
      const auto& f = which == 1 ? eqs.eq1_enclosure : eqs.eq2_enclosure;
      out = f(phi, beta1);
    } else {
      out = Interval((which == 1 ? eqs.eq1 : eqs.eq2)(phi, beta1));
    }
    return std::isfinite(out.lo()) && std::isfinite(out.hi());
  } catch (const DomainError&) {
    return false;
  }
}

}  // namespace

VerifyResult verify_exclusion(const ExclusionTrace& t, const EquationPair& eqs, bool use_enclosure, double delta) {
  check_structure(t);
  if (use_enclosure && (!eqs.eq1_enclosure || !eqs.eq2_enclosure))
    throw StructuralError("verify_exclusion: enclosures requested but not provided");
  VerifyResult r;
  r.ok = true;
  auto check = [&](int index, SignFamily fam, double phi, double beta1, int eq, bool want_positive) {
    SignCheck c;
    c.index = index;
    c.family = fam;
    c.phi = phi;
    c.beta1 = beta1;
    c.equation = eq;
    Interval v;
    if (evaluate(eqs, eq, phi, beta1, use_enclosure, v)) {
      c.value = v.mid();
      c.margin = want_positive ? v.lo() - delta : -delta - v.hi();
      c.passed = c.margin > 0;
    } else {
      c.value = NAN;
      c.margin = NAN;
      c.passed = false;
    }
    if (!c.passed && r.ok) {
      r.ok = false;
      r.failing_index = index;
      r.failing_family = fam;
      std::ostringstream os;
      os << "sign check " << to_string(fam) << " failed at index " << index << " (value " << c.value << ")";
      r.message = os.str();
    }
    r.checks.push_back(c);
  };
  const int K = t.K(), L = t.L();
  for (int i = 0; i <= K; ++i) check(i, SignFamily::eq1_minus, t.phi_minus[i], t.beta_plus[i], 1, true);
  for (int i = 0; i < K; ++i) check(i, SignFamily::eq2_minus, t.phi_minus[i], t.beta_plus[i + 1], 2, false);
  for (int j = 0; j <= L; ++j) check(j, SignFamily::eq1_plus, t.phi_plus[j], t.beta_minus[j], 1, false);
  for (int j = 0; j < L; ++j) check(j, SignFamily::eq2_plus, t.phi_plus[j], t.beta_minus[j + 1], 2, true);
  return r;
}

namespace {

template <class Pred>
bool holds(const Pred& pred, double v) {
  try {
    return pred(v);
  } catch (const DomainError&) {
    return false;
  }
}

// pred monotone false -> true on [lo, hi] with pred(hi) true: smallest true point found.
template <class Pred>
double first_true(const Pred& pred, double lo, double hi) {
  if (holds(pred, lo)) return lo;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (holds(pred, mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// pred monotone true -> false on [lo, hi] with pred(lo) true: largest true point found.
template <class Pred>
double last_true(const Pred& pred, double lo, double hi) {
  if (holds(pred, hi)) return hi;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (holds(pred, mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

ExclusionTrace spiral_localize(const EquationPair& eqs, const Rectangle& domain, double width_target, double delta,
                               int max_steps, bool use_enclosure) {
  if (use_enclosure && (!eqs.eq1_enclosure || !eqs.eq2_enclosure))
    throw StructuralError("spiral_localize: enclosures requested but not provided");
  auto pos = [&](int which, double phi, double b) {
    if (use_enclosure) return (which == 1 ? eqs.eq1_enclosure : eqs.eq2_enclosure)(phi, b).lo() > delta;
    return (which == 1 ? eqs.eq1 : eqs.eq2)(phi, b) > delta;
  };
  auto neg = [&](int which, double phi, double b) {
    if (use_enclosure) return (which == 1 ? eqs.eq1_enclosure : eqs.eq2_enclosure)(phi, b).hi() < -delta;
    return (which == 1 ? eqs.eq1 : eqs.eq2)(phi, b) < -delta;
  };
  auto safe = [&](auto f) {
    try {
      return f();
    } catch (const DomainError&) {
      return false;
    }
  };
  if (!safe([&] { return pos(1, domain.phi_lo, domain.beta_hi); }) ||
      !safe([&] { return neg(1, domain.phi_hi, domain.beta_lo); }))
    throw DomainError("cannot start spiral: eq1 must be positive at (phi_min, beta1_max) and negative at (phi_max, beta1_min)");

  ExclusionTrace t;
  t.domain = domain;
  t.phi_minus = {domain.phi_lo};
  t.beta_plus = {domain.beta_hi};
  t.phi_plus = {domain.phi_hi};
  t.beta_minus = {domain.beta_lo};
  bool minus_alive = true, plus_alive = true;
  int steps = 0;
  while (steps < max_steps) {
    Rectangle r = t.rectangle();
    if (r.phi_width() <= width_target && r.beta_width() <= width_target) break;
    if (!minus_alive && !plus_alive) break;
    ++steps;
    if (minus_alive) {
      const double phi = t.phi_minus.back(), beta = t.beta_plus.back();
      if (!safe([&] { return neg(2, phi, beta); })) {
        minus_alive = false;
      } else {
        double nb = first_true([&](double b) { return neg(2, phi, b); }, t.beta_minus.back(), beta);
        double np = last_true([&](double p) { return pos(1, p, nb); }, phi, t.phi_plus.back());
        if (nb < beta && np > phi) {
          t.beta_plus.push_back(nb);
          t.phi_minus.push_back(np);
        } else {
          minus_alive = false;
        }
      }
    }
    if (plus_alive) {
      const double phi = t.phi_plus.back(), beta = t.beta_minus.back();
      if (!safe([&] { return pos(2, phi, beta); })) {
        plus_alive = false;
      } else {
        double nb = last_true([&](double b) { return pos(2, phi, b); }, beta, t.beta_plus.back());
        double np = first_true([&](double p) { return neg(1, p, nb); }, t.phi_minus.back(), phi);
        if (nb > beta && np < phi) {
          t.beta_minus.push_back(nb);
          t.phi_plus.push_back(np);
        } else {
          plus_alive = false;
        }
      }
    }
  }
  Rectangle r = t.rectangle();
  std::ostringstream os;
  if (r.phi_width() <= width_target && r.beta_width() <= width_target)
    os << "target reached";
  else
    os << "stalled above target (" << r.phi_width() << " x " << r.beta_width() << ")";
  os << " after " << steps << " steps, K=" << t.K() << ", L=" << t.L();
  t.diagnostic = os.str();
  return t;
}

namespace {

// Root of a decreasing function on [lo, hi] by bisection; exact zeros stop early.
bool bisect_decreasing(const std::function<double(double)>& f, double lo, double hi, double& root) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0) return root = lo, true;
  if (fhi == 0) return root = hi, true;
  if (!(flo > 0 && fhi < 0)) return false;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = f(mid);
    if (fm == 0) return root = mid, true;
    (fm > 0 ? lo : hi) = mid;
  }
  root = std::fabs(f(lo)) <= std::fabs(f(hi)) ? lo : hi;
  return true;
}

}  // namespace

ReferenceRoot solve_reference(const EquationPair& eqs, const Rectangle& rect) {
  ReferenceRoot out;
  bool inner_ok = true;
  auto phi_of = [&](double b) {
    double root = NAN;
    if (!bisect_decreasing([&](double p) { return eqs.eq1(p, b); }, rect.phi_lo, rect.phi_hi, root)) inner_ok = false;
    return root;
  };
  double beta = NAN;
  bool outer_ok = bisect_decreasing(
      [&](double b) {
        double p = phi_of(b);
        return inner_ok ? eqs.eq2(p, b) : NAN;
      },
      rect.beta_lo, rect.beta_hi, beta);
  if (!outer_ok || !inner_ok) {
    out.message = "no sign change detected inside the rectangle";
    return out;
  }
  out.beta1 = beta;
  out.phi = phi_of(beta);
  out.residual1 = eqs.eq1(out.phi, out.beta1);
  out.residual2 = eqs.eq2(out.phi, out.beta1);
  out.found = inner_ok;
  out.message = out.found ? "converged" : "inner bisection failed";
  return out;
}

}  // namespace tsat
