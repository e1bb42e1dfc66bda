#pragma once

namespace tsat {

// h(q, t) = (q+t) log(1 + t/q) + (1-q-t) log(1 - t/(1-q)) for t <= 1-q, +inf beyond.
double ld_h(double q, double t);

// c(q, t) = min(h(q, t), h(1-q, t)); Pr(|Y/n - q| >= t) <= 2 exp(-c(q, t) n).
double binomial_large_deviation(double q, double t);

// Smallest t with 2 cells exp(-c(q, t) samples) <= alpha, by bisection.
double ld_budget(double q, double samples, double alpha, int cells = 1);

}  // namespace tsat
