#include "qps/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qps/cancellation.hpp"
#include "qps/detail/bracket.hpp"

namespace qps {

namespace detail {

double condition_value(const BlockProfile& profile, double alpha) {
  const double k = profile.num_blocks();
  const double z = profile.total_targets();
  const double t = static_cast<double>(profile.marked_blocks());
  double sum = 0.0;
  for (double tau : profile.taus()) {
    sum += (k * tau - z) * std::cos(2.0 * alpha * std::sqrt(tau));
  }
  return 2.0 * sum - z * (k - 2.0 * t);
}

double alpha_bracket_top(const BlockProfile& profile) {
  const double tau_max =
      *std::max_element(profile.taus().begin(), profile.taus().end());
  return std::numbers::pi / (2.0 * std::sqrt(tau_max));
}

std::vector<double> condition_roots(const BlockProfile& profile) {
  auto residual = [&](double alpha) { return condition_value(profile, alpha); };
  return qps::detail::find_roots(residual, 0.0, alpha_bracket_top(profile));
}

EvenClosedForm even_closed_form(double num_blocks, double marked_blocks,
                                double tau_bar) {
  const double k = num_blocks;
  const double t = marked_blocks;
  const double z = t * tau_bar;
  EvenClosedForm out;
  out.alpha0 = std::acos((k - 2.0 * t) / (2.0 * (k - t))) / (2.0 * std::sqrt(tau_bar));
  out.eta0 = 0.5 * std::sqrt(k / z) *
             std::atan(std::sqrt(3.0 * t * k - 4.0 * t * t) / (k - 2.0 * t));
  return out;
}

}  // namespace detail

namespace {

constexpr double kEvenEpsilonTol = 1e-12;

void require_strict(const BlockProfile& profile, const char* op) {
  if (!profile.strict_regime()) {
    throw RegimeError(std::string(op) + " requires t < K/4");
  }
}

double queries_leading_for(const Problem& problem, double f_star) {
  const double n_over_z = static_cast<double>(problem.total_items()) /
                          static_cast<double>(problem.total_targets());
  const double sqrt_b = std::sqrt(static_cast<double>(problem.block_size()));
  return std::numbers::pi / 4.0 * std::sqrt(n_over_z) - f_star * sqrt_b;
}

// Golden-section maximization of f on [lo, hi].
template <class F>
double golden_max(F&& f, double lo, double hi, int iters = 120) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters && (b - a) > 1e-14 * (1.0 + std::abs(a)); ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? x1 : x2;
}

}  // namespace

double optimality_residual(const BlockProfile& profile, double alpha) {
  require_strict(profile, "optimality_residual");
  return detail::condition_value(profile, alpha);
}

double optimality_residual(const Problem& problem, double alpha) {
  return optimality_residual(problem.profile(), alpha);
}

OptimizationResult even_optimum(const BlockProfile& profile) {
  require_strict(profile, "even_optimum");
  if (profile.max_abs_epsilon() > kEvenEpsilonTol) {
    throw InputError("even_optimum requires an even distribution (all taus equal)");
  }
  const auto cf = detail::even_closed_form(
      profile.num_blocks(), profile.marked_blocks(), profile.tau_bar());
  OptimizationResult out;
  out.alpha_star = cf.alpha0;
  out.eta_star = cf.eta0;
  out.f_star = cf.eta0 - cf.alpha0;
  out.method = OptimizeMethod::ClosedFormEven;
  return out;
}

OptimizationResult solve_uneven_optimum(const BlockProfile& profile) {
  require_strict(profile, "solve_uneven_optimum");
  const auto roots = detail::condition_roots(profile);
  if (roots.empty()) {
    throw SolveError(
        "optimality condition has no sign change with 2 alpha sqrt(tau_max) "
        "in (0, pi)");
  }
  const double alpha = roots.front();

  // The eliminated multiplier is valid only while the non-vanishing factor
  // of the stationarity product stays positive; guaranteed for t < K/4.
  double cos_sum = 0.0;
  for (double tau : profile.taus()) {
    cos_sum += std::cos(2.0 * alpha * std::sqrt(tau));
  }
  const double first_factor =
      2.0 * cos_sum + profile.num_blocks() - 2.0 * profile.marked_blocks();
  if (!(first_factor > 0.0)) {
    throw InvariantError("non-vanishing stationarity factor is not positive");
  }

  OptimizationResult out;
  out.alpha_star = alpha;
  out.eta_star = eta_large_b(profile, alpha);
  out.f_star = out.eta_star - out.alpha_star;
  out.method = OptimizeMethod::ConditionRoot;
  out.sign_change_intervals = static_cast<int>(roots.size());
  out.bracket_roots = roots;
  return out;
}

OptimizationResult grid_oracle(const BlockProfile& profile, long long grid_points) {
  require_strict(profile, "grid_oracle");
  if (grid_points < 1000) {
    throw InputError("grid_oracle requires at least 1000 grid points");
  }
  const double top = detail::alpha_bracket_top(profile);
  auto f = [&](double alpha) { return eta_large_b(profile, alpha) - alpha; };

  const long long n = grid_points;
  double best_f = -std::numeric_limits<double>::infinity();
  long long best_i = 1;
  for (long long i = 1; i < n; ++i) {
    const double alpha = top * static_cast<double>(i) / static_cast<double>(n);
    const double fi = f(alpha);
    if (fi > best_f) {
      best_f = fi;
      best_i = i;
    }
  }
  const double lo = top * static_cast<double>(std::max<long long>(best_i - 1, 1)) /
                    static_cast<double>(n);
  const double hi = top * static_cast<double>(std::min<long long>(best_i + 1, n - 1)) /
                    static_cast<double>(n);
  const double alpha = golden_max(f, lo, hi);

  OptimizationResult out;
  out.alpha_star = alpha;
  out.eta_star = eta_large_b(profile, alpha);
  out.f_star = out.eta_star - out.alpha_star;
  out.method = OptimizeMethod::GridOracle;
  return out;
}

OptimizationResult even_optimum(const Problem& problem) {
  OptimizationResult out = even_optimum(problem.profile());
  out.queries_leading = queries_leading_for(problem, out.f_star);
  return out;
}

OptimizationResult solve_uneven_optimum(const Problem& problem) {
  OptimizationResult out = solve_uneven_optimum(problem.profile());
  out.queries_leading = queries_leading_for(problem, out.f_star);
  return out;
}

OptimizationResult grid_oracle(const Problem& problem, long long grid_points) {
  OptimizationResult out = grid_oracle(problem.profile(), grid_points);
  out.queries_leading = queries_leading_for(problem, out.f_star);
  return out;
}

double total_queries(const Problem& problem, double eta, double alpha) {
  if (!(eta >= 0.0) || !(alpha >= 0.0)) {
    throw InputError("eta and alpha must be nonnegative");
  }
  return queries_leading_for(problem, eta - alpha);
}

}  // namespace qps
