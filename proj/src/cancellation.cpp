#include "qps/cancellation.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qps/detail/bracket.hpp"

namespace qps {

double residual_finite_b(const Problem& problem, double j1, double j2) {
  const double n = static_cast<double>(problem.total_items());
  const double z = static_cast<double>(problem.total_targets());
  const double b = static_cast<double>(problem.block_size());
  const double k = static_cast<double>(problem.num_blocks());
  const double t = static_cast<double>(problem.marked_blocks());
  const RotationAngles ang = problem.angles();

  const double x = (2.0 * j1 + 1.0) * ang.theta;
  const double sin_x = std::sin(x);
  const double cos_x = std::cos(x);

  const double lhs = n / std::sqrt(n - z) * (t / k - 0.5) * cos_x;
  double rhs = 0.0;
  for (int i = 0; i < problem.marked_blocks(); ++i) {
    const double tau = static_cast<double>(problem.distribution().taus[i]);
    const double y = 2.0 * j2 * ang.thetas[i];
    const double sin_y = std::sin(y);
    const double cos_y = std::cos(y);
    rhs += tau / std::sqrt(z) * cos_y * sin_x;
    rhs += std::sqrt(tau * (b - tau) / (n - z)) * sin_y * cos_x;
    rhs -= std::sqrt(tau * (b - tau) / z) * sin_y * sin_x;
    rhs += (b - tau) / std::sqrt(n - z) * cos_y * cos_x;
  }
  return lhs - rhs;
}

double solve_j1_finite_b(const Problem& problem, double j2) {
  if (!(j2 >= 0.0)) throw InputError("j2 must be nonnegative");
  const double theta = problem.angles().theta;

  auto residual_of_x = [&](double x) {
    const double j1 = (x / theta - 1.0) / 2.0;
    return residual_finite_b(problem, j1, j2);
  };

  const auto roots = detail::find_roots(residual_of_x, 0.0, std::numbers::pi);
  for (double x : roots) {
    const double j1 = (x / theta - 1.0) / 2.0;
    if (j1 > 0.0) return j1;
  }
  throw SolveError(
      "cancellation residual does not change sign for j1 > 0 with "
      "(2 j1 + 1) theta in (0, pi); j2 = " + std::to_string(j2));
}

namespace detail {

TanFormParts tan_form_parts(const BlockProfile& profile, double alpha) {
  const double k = profile.num_blocks();
  const double z = profile.total_targets();
  double sin_sum = 0.0;
  double sin_sq_sum = 0.0;
  for (double tau : profile.taus()) {
    const double r = std::sqrt(tau);
    sin_sum += r * std::sin(2.0 * alpha * r);
    const double s = std::sin(alpha * r);
    sin_sq_sum += s * s;
  }
  return TanFormParts{2.0 * std::sqrt(k) * sin_sum,
                      std::sqrt(z) * (k - 4.0 * sin_sq_sum)};
}

double eta_tan_principal(const BlockProfile& profile, double alpha) {
  const auto parts = tan_form_parts(profile, alpha);
  const double angle = std::atan(parts.numerator / parts.denominator);
  return 0.5 * std::sqrt(profile.num_blocks() / profile.total_targets()) * angle;
}

}  // namespace detail

double eta_large_b(const BlockProfile& profile, double alpha) {
  if (!(alpha > 0.0)) throw InputError("alpha must be positive");
  if (!profile.strict_regime()) {
    throw RegimeError(
        "the large-block constraint has a guaranteed-positive denominator "
        "only for t < K/4");
  }
  return detail::eta_tan_principal(profile, alpha);
}

double eta_large_b(const Problem& problem, double alpha) {
  return eta_large_b(problem.profile(), alpha);
}

double eta_large_k(const BlockProfile& profile, double alpha) {
  if (!(alpha > 0.0)) throw InputError("alpha must be positive");
  double sum = 0.0;
  for (double tau : profile.taus()) {
    const double r = std::sqrt(tau);
    sum += r * std::sin(2.0 * alpha * r);
  }
  return sum / profile.total_targets();
}

}  // namespace qps
