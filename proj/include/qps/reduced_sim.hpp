#pragma once

#include <Eigen/Dense>

#include "qps/problem.hpp"

namespace qps {

// State in the (2t+1)-dimensional invariant subspace. The basis order is a
// wire-format contract: (t_1, ntt_1, t_2, ntt_2, ..., t_t, ntt_t, u),
// where t_i / ntt_i are the normalized target / non-target sums of the
// i-th marked block and u is the normalized sum over unmarked blocks.
// Amplitudes stay real throughout the algorithm.
struct ReducedState {
  Eigen::VectorXd amps;

  int marked_blocks() const { return static_cast<int>((amps.size() - 1) / 2); }
  double target_amp(int i) const { return amps[2 * i]; }
  double nontarget_amp(int i) const { return amps[2 * i + 1]; }
  double unmarked_amp() const { return amps[amps.size() - 1]; }
};

enum class ScheduleMode { IntegerOperator, RealAnalytic };

// Iteration counts (j1 global, j2 local). Integer-operator mode drives the
// explicit orthogonal matrices; real-analytic mode drives the closed-form
// amplitudes, valid for any real j1, j2.
struct Schedule {
  double j1 = 0.0;
  double j2 = 0.0;
  ScheduleMode mode = ScheduleMode::RealAnalytic;

  static Schedule integer_ops(long long j1, long long j2);
  static Schedule analytic(double j1, double j2);
  // j1 = (pi/4) sqrt(N/z) - eta sqrt(b),  j2 = alpha sqrt(b), eta, alpha > 0.
  static Schedule from_eta_alpha(const Problem& problem, double eta, double alpha);
};

// Uniform superposition expressed in reduced coordinates:
// (sqrt(tau_i/N), sqrt((b-tau_i)/N))_i followed by sqrt(b(K-t)/N).
ReducedState initial_state(const Problem& problem);

// Global Grover iteration restricted to the invariant subspace:
// -(I - 2 s s^T) D with s the initial-state coordinates and D flipping the
// sign of every t_i coordinate. Orthogonal.
Eigen::MatrixXd g1_matrix(const Problem& problem);

// j2 local Grover iterations: block-diagonal 2x2 rotations by 2*j2*theta_i
// per marked block and a trailing 1 on u.
Eigen::MatrixXd g2_matrix(const Problem& problem, long long j2);

// g2(j2) * g1^j1 applied to the initial state (integer-operator mode).
ReducedState evolve_operator(const Problem& problem, long long j1, long long j2);

// Closed-form state after j1 global and j2 local iterations; j1, j2 may be
// real. Coincides with evolve_operator at integer schedules.
ReducedState evolve_analytic(const Problem& problem, double j1, double j2);

// The last reflection I_s1 = I - 2 s s^T. When the cancellation constraint
// holds this zeroes the u coordinate.
ReducedState final_reflection(const Problem& problem, const ReducedState& state);

// Probability mass on marked blocks: sum_i (a_{t_i}^2 + a_{ntt_i}^2).
double success_probability(const Problem& problem, const ReducedState& state);

}  // namespace qps
