#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "qps/errors.hpp"

namespace qps::detail {

struct BracketOptions {
  int scan_points = 4096;      // sign-change scan resolution
  int max_iters = 200;         // refinement iterations per root
  double residual_tol = 1e-12; // absolute tolerance on |f|
};

// Refine a bracketed root by bisection with an interleaved secant step.
// The bracket [lo, hi] must satisfy f(lo)*f(hi) <= 0.
template <class F>
double refine_root(F&& f, double lo, double hi, double flo, double fhi,
                   const BracketOptions& opt = {}) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  double best_x = 0.5 * (lo + hi);
  for (int it = 0; it < opt.max_iters; ++it) {
    double mid = 0.5 * (lo + hi);
    // Secant candidate; fall back to bisection when it leaves the bracket.
    const double denom = fhi - flo;
    if (denom != 0.0) {
      const double sec = lo - flo * (hi - lo) / denom;
      if (sec > lo && sec < hi) mid = sec;
    }
    const double fmid = f(mid);
    best_x = mid;
    if (std::abs(fmid) <= opt.residual_tol) return mid;
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                       (std::abs(lo) + std::abs(hi))) {
      break;
    }
  }
  return best_x;
}

// Scan (lo, hi) for sign changes of f and refine each; returns ascending
// roots. Endpoints are sampled strictly inside the interval.
template <class F>
std::vector<double> find_roots(F&& f, double lo, double hi,
                               const BracketOptions& opt = {}) {
  std::vector<double> roots;
  const int n = opt.scan_points;
  double x_prev = lo + (hi - lo) * (0.5 / n);
  double f_prev = f(x_prev);
  for (int i = 1; i < n; ++i) {
    const double x = lo + (hi - lo) * ((i + 0.5) / n);
    const double fx = f(x);
    if (f_prev == 0.0) {
      roots.push_back(x_prev);
    } else if ((f_prev < 0.0) != (fx < 0.0)) {
      roots.push_back(refine_root(f, x_prev, x, f_prev, fx, opt));
    }
    x_prev = x;
    f_prev = fx;
  }
  return roots;
}

}  // namespace qps::detail
