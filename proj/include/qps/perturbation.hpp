#pragma once

#include <limits>
#include <vector>

#include "qps/problem.hpp"

namespace qps {

// Second-order comparison of a mildly uneven distribution against the even
// distribution with the same K, t, tau_bar. predicted_penalty is the
// closed-form bound, measured_penalty the solver value f(even) - f(uneven)
// at the requested epsilon scale.
struct PerturbationReport {
  double num_blocks = 0.0;  // K; +infinity on the many-blocks path
  int marked_blocks = 0;    // t
  double tau_bar = 0.0;
  double beta = 0.0;
  double epsilon_scale = 0.0;  // max |eps_i| after rescaling
  double variance = 0.0;
  double delta_alpha = 0.0;
  double delta_eta = 0.0;
  double predicted_penalty = 0.0;
  double measured_penalty = 0.0;
  double ratio = std::numeric_limits<double>::quiet_NaN();
  bool degenerate = false;         // even input: both sides vanish
  bool inequality_checked = false;
  bool inequality_holds = false;
};

// (sqrt(3) pi^2 - 3 pi + 9 sqrt(3)) / 144, approximately 0.1615: the
// many-blocks penalty constant. Equals penalty_bound_coefficient(0).
double large_k_penalty_constant();

// Penalty predicted in the many-blocks limit:
// large_k_penalty_constant() * variance / tau_bar^(5/2).
double large_k_penalty_prediction(double tau_bar, double variance);

// First-order shifts of the optimum under an uneven perturbation, with
// alpha0 taken from the even closed form at the same K, t, tau_bar:
//   delta_alpha = -[ (1-2B)/(4 sqrt(3-4B)) alpha0^2/tau_bar^(3/2)
//                  + (3+B)/(8(1-B))        alpha0  /tau_bar^2 ] var,
//   delta_eta   = -[ (1-B)(1-2B)/sqrt(3-4B)         alpha0^2/tau_bar^(3/2)
//                  + (4B^3-8B^2+3B+1)/(4(1-B)^2)    alpha0  /tau_bar^2
//                  + (1-2B) sqrt(3-4B)/(16(1-B))    1/tau_bar^(5/2) ] var,
// where B = t/K.
double delta_alpha(const BlockProfile& profile);
double delta_eta(const BlockProfile& profile);

// Second-order coefficients of the two block sums around the even point:
//   sum_i sqrt(tau_i) sin(2 a_K sqrt(tau_i)) = t sqrt(tau_bar) sin(2 a_0 sqrt(tau_bar)) + P var,
//   sum_i cos(2 a_K sqrt(tau_i))             = t cos(2 a_0 sqrt(tau_bar))               + Q var,
// with a_K = a_0 + delta_alpha. delta_eta assembles from them as
//   delta_eta = [ (1-2B) P/(t tau_bar) - B sqrt(3-4B) Q/(t sqrt(tau_bar)) ] var.
double sin_sum_second_order(const BlockProfile& profile);  // P
double cos_sum_second_order(const BlockProfile& profile);  // Q

// Finite-beta lower-bound coefficient on the second-order penalty:
//   g(B) = [ sqrt(3-4B)(1-2B)(pi^2(1-B)+9) + 3 pi (-8B^2+7B-1) ] / (144(1-B)).
// Domain [0, 3/4); positive exactly on (0, beta_critical()).
double penalty_bound_coefficient(double beta);

// Root of the bound coefficient on (0, 3/4), recomputed by bisection to
// 1e-10 rather than hard-coded.
double beta_critical();

// Rescales the profile's epsilon pattern to max |eps_i| = epsilon_scale,
// solves both optima and compares the measured penalty against
// penalty_bound_coefficient(beta) * var / tau_bar^(5/2). With
// assert_inequality the check is refused (RegimeError) for beta >=
// beta_critical(); without it the report is produced for any beta the
// relaxed machinery supports. Even inputs yield a degenerate report.
PerturbationReport uneven_penalty_report(const BlockProfile& profile,
                                         double epsilon_scale,
                                         bool assert_inequality = true);

// Many-blocks analogue: the optimum is solved from the K -> infinity
// stationarity condition 2 sum_i tau_i cos(2 alpha sqrt(tau_i)) = z and the
// K -> infinity constraint, and the prediction is
// large_k_penalty_prediction. pattern holds the epsilon shape (summing to
// zero); it is rescaled to max |eps_i| = epsilon_scale.
PerturbationReport large_k_penalty_report(double tau_bar,
                                          const std::vector<double>& pattern,
                                          double epsilon_scale);

namespace detail {

double alpha0_of_beta(double beta, double tau_bar);
double delta_alpha_closed(double beta, double tau_bar, double variance);
double delta_eta_closed(double beta, double tau_bar, double variance);
double sin_sum_coeff_closed(double beta, double tau_bar, double marked_blocks);
double cos_sum_coeff_closed(double beta, double tau_bar, double marked_blocks);

}  // namespace detail

}  // namespace qps
