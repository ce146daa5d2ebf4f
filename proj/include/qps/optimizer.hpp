#pragma once

#include <limits>
#include <vector>

#include "qps/problem.hpp"

namespace qps {

enum class OptimizeMethod { ClosedFormEven, ConditionRoot, GridOracle };

// Solution of the large-block query minimization: maximize
// f(eta, alpha) = eta - alpha subject to the cancellation constraint.
// Leading query count is (pi/4) sqrt(N/z) - f_star sqrt(b); it is NaN when
// the result was computed from a profile with no finite geometry attached.
struct OptimizationResult {
  double alpha_star = 0.0;
  double eta_star = 0.0;
  double f_star = 0.0;
  double queries_leading = std::numeric_limits<double>::quiet_NaN();
  OptimizeMethod method = OptimizeMethod::ConditionRoot;
  // Diagnostics from the condition-root bracket scan. More than one root
  // is possible for strongly uneven taus; the smallest is always taken and
  // the rest are reported rather than silently dropped.
  int sign_change_intervals = 0;
  std::vector<double> bracket_roots;
};

// LHS of the stationarity condition obtained after eliminating the
// multiplier from the constrained maximization of eta - alpha:
//   2 sum_i (K tau_i - z) cos(2 alpha sqrt(tau_i)) - z (K - 2t).
// Equals z*K at alpha = 0.
double optimality_residual(const BlockProfile& profile, double alpha);
double optimality_residual(const Problem& problem, double alpha);

// Closed forms for an even distribution (all tau_i equal):
//   cos(2 alpha0 sqrt(tau_bar)) = (K - 2t) / (2 (K - t)),
//   tan(2 eta0 sqrt(z/K))       = sqrt(3 t K - 4 t^2) / (K - 2t).
// Rejects uneven inputs.
OptimizationResult even_optimum(const BlockProfile& profile);
OptimizationResult even_optimum(const Problem& problem);

// Smallest positive root of the optimality residual with
// 2 alpha sqrt(tau_max) in (0, pi), paired with eta from the large-block
// constraint. Reproduces even_optimum on even inputs.
OptimizationResult solve_uneven_optimum(const BlockProfile& profile);
OptimizationResult solve_uneven_optimum(const Problem& problem);

// Independent verification path: dense scan of f(alpha) = eta(alpha) - alpha
// over the solver bracket followed by golden-section refinement. Knows
// nothing about the stationarity condition.
OptimizationResult grid_oracle(const BlockProfile& profile, long long grid_points);
OptimizationResult grid_oracle(const Problem& problem, long long grid_points);

// j1 + j2 = (pi/4) sqrt(N/z) - (eta - alpha) sqrt(b).
double total_queries(const Problem& problem, double eta, double alpha);

namespace detail {

// Unchecked building blocks shared with the relaxed perturbation analysis.
double condition_value(const BlockProfile& profile, double alpha);
std::vector<double> condition_roots(const BlockProfile& profile);
double alpha_bracket_top(const BlockProfile& profile);

struct EvenClosedForm {
  double eta0 = 0.0;
  double alpha0 = 0.0;
};
EvenClosedForm even_closed_form(double num_blocks, double marked_blocks,
                                double tau_bar);

}  // namespace detail

}  // namespace qps
