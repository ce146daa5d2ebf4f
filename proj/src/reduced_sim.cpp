#include "qps/reduced_sim.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qps {

Schedule Schedule::integer_ops(long long j1, long long j2) {
  if (j1 < 0 || j2 < 0) throw InputError("iteration counts must be nonnegative");
  return Schedule{static_cast<double>(j1), static_cast<double>(j2),
                  ScheduleMode::IntegerOperator};
}

Schedule Schedule::analytic(double j1, double j2) {
  if (!(j1 >= 0.0) || !(j2 >= 0.0)) {
    throw InputError("iteration counts must be nonnegative");
  }
  return Schedule{j1, j2, ScheduleMode::RealAnalytic};
}

Schedule Schedule::from_eta_alpha(const Problem& problem, double eta, double alpha) {
  if (!(eta > 0.0) || !(alpha > 0.0)) {
    throw InputError("eta and alpha must be positive");
  }
  const double n_over_z = static_cast<double>(problem.total_items()) /
                          static_cast<double>(problem.total_targets());
  const double sqrt_b = std::sqrt(static_cast<double>(problem.block_size()));
  const double j1 = std::numbers::pi / 4.0 * std::sqrt(n_over_z) - eta * sqrt_b;
  const double j2 = alpha * sqrt_b;
  if (!(j1 >= 0.0)) {
    throw InputError("eta = " + std::to_string(eta) +
                     " yields a negative global iteration count");
  }
  return Schedule{j1, j2, ScheduleMode::RealAnalytic};
}

ReducedState initial_state(const Problem& problem) {
  const int t = problem.marked_blocks();
  const double n = static_cast<double>(problem.total_items());
  const double b = static_cast<double>(problem.block_size());
  const double k = static_cast<double>(problem.num_blocks());

  Eigen::VectorXd amps(2 * t + 1);
  for (int i = 0; i < t; ++i) {
    const double tau = static_cast<double>(problem.distribution().taus[i]);
    amps[2 * i] = std::sqrt(tau / n);
    amps[2 * i + 1] = std::sqrt((b - tau) / n);
  }
  amps[2 * t] = std::sqrt(b * (k - t) / n);
  return ReducedState{std::move(amps)};
}

Eigen::MatrixXd g1_matrix(const Problem& problem) {
  const int t = problem.marked_blocks();
  const int dim = 2 * t + 1;
  const Eigen::VectorXd s = initial_state(problem).amps;

  // Oracle sign: -1 on every t_i coordinate.
  Eigen::VectorXd oracle_sign = Eigen::VectorXd::Ones(dim);
  for (int i = 0; i < t; ++i) oracle_sign[2 * i] = -1.0;

  const Eigen::MatrixXd reflect_s =
      Eigen::MatrixXd::Identity(dim, dim) - 2.0 * s * s.transpose();
  return -reflect_s * oracle_sign.asDiagonal();
}

Eigen::MatrixXd g2_matrix(const Problem& problem, long long j2) {
  if (j2 < 0) throw InputError("j2 must be nonnegative");
  const int t = problem.marked_blocks();
  const int dim = 2 * t + 1;
  const RotationAngles ang = problem.angles();

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < t; ++i) {
    const double phi = 2.0 * static_cast<double>(j2) * ang.thetas[i];
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    m(2 * i, 2 * i) = c;
    m(2 * i, 2 * i + 1) = s;
    m(2 * i + 1, 2 * i) = -s;
    m(2 * i + 1, 2 * i + 1) = c;
  }
  m(dim - 1, dim - 1) = 1.0;
  return m;
}

ReducedState evolve_operator(const Problem& problem, long long j1, long long j2) {
  if (j1 < 0 || j2 < 0) throw InputError("iteration counts must be nonnegative");
  Eigen::VectorXd v = initial_state(problem).amps;
  const Eigen::MatrixXd g1 = g1_matrix(problem);
  for (long long i = 0; i < j1; ++i) v = g1 * v;
  v = g2_matrix(problem, j2) * v;
  return ReducedState{std::move(v)};
}

ReducedState evolve_analytic(const Problem& problem, double j1, double j2) {
  if (!(j1 >= 0.0) || !(j2 >= 0.0)) {
    throw InputError("iteration counts must be nonnegative");
  }
  const int t = problem.marked_blocks();
  const double n = static_cast<double>(problem.total_items());
  const double z = static_cast<double>(problem.total_targets());
  const double b = static_cast<double>(problem.block_size());
  const double k = static_cast<double>(problem.num_blocks());
  const RotationAngles ang = problem.angles();

  const double x = (2.0 * j1 + 1.0) * ang.theta;
  const double sin_x = std::sin(x);
  const double cos_x = std::cos(x);

  Eigen::VectorXd amps(2 * t + 1);
  for (int i = 0; i < t; ++i) {
    const double tau = static_cast<double>(problem.distribution().taus[i]);
    const double y = 2.0 * j2 * ang.thetas[i];
    const double target_weight = std::sqrt(tau / z);
    const double nontarget_weight = std::sqrt((b - tau) / (n - z));
    amps[2 * i] = target_weight * std::cos(y) * sin_x +
                  nontarget_weight * std::sin(y) * cos_x;
    amps[2 * i + 1] = -target_weight * std::sin(y) * sin_x +
                      nontarget_weight * std::cos(y) * cos_x;
  }
  // a_nt * sqrt(b (K - t)) with a_nt = cos(x) / sqrt(N - z).
  amps[2 * t] = cos_x * std::sqrt(b * (k - t) / (n - z));
  return ReducedState{std::move(amps)};
}

ReducedState final_reflection(const Problem& problem, const ReducedState& state) {
  const Eigen::VectorXd s = initial_state(problem).amps;
  if (s.size() != state.amps.size()) {
    throw InputError("state dimension does not match the problem");
  }
  const double overlap = s.dot(state.amps);
  return ReducedState{state.amps - 2.0 * overlap * s};
}

double success_probability(const Problem& problem, const ReducedState& state) {
  const int t = problem.marked_blocks();
  if (state.amps.size() != 2 * t + 1) {
    throw InputError("state dimension does not match the problem");
  }
  double mass = 0.0;
  for (int i = 0; i < 2 * t; ++i) mass += state.amps[i] * state.amps[i];
  return mass;
}

}  // namespace qps
