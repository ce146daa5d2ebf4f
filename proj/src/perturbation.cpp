#include "qps/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qps/cancellation.hpp"
#include "qps/detail/bracket.hpp"
#include "qps/optimizer.hpp"

namespace qps {

namespace detail {

double alpha0_of_beta(double beta, double tau_bar) {
  return std::acos((1.0 - 2.0 * beta) / (2.0 * (1.0 - beta))) /
         (2.0 * std::sqrt(tau_bar));
}

double delta_alpha_closed(double beta, double tau_bar, double variance) {
  const double a0 = alpha0_of_beta(beta, tau_bar);
  const double tb_15 = tau_bar * std::sqrt(tau_bar);
  return -((1.0 - 2.0 * beta) / (4.0 * std::sqrt(3.0 - 4.0 * beta)) * a0 * a0 / tb_15 +
           (3.0 + beta) / (8.0 * (1.0 - beta)) * a0 / (tau_bar * tau_bar)) *
         variance;
}

double delta_eta_closed(double beta, double tau_bar, double variance) {
  const double a0 = alpha0_of_beta(beta, tau_bar);
  const double one_m = 1.0 - beta;
  const double root = std::sqrt(3.0 - 4.0 * beta);
  const double tb_15 = tau_bar * std::sqrt(tau_bar);
  const double tb_2 = tau_bar * tau_bar;
  const double cubic = 4.0 * beta * beta * beta - 8.0 * beta * beta + 3.0 * beta + 1.0;
  return -(one_m * (1.0 - 2.0 * beta) / root * a0 * a0 / tb_15 +
           cubic / (4.0 * one_m * one_m) * a0 / tb_2 +
           (1.0 - 2.0 * beta) * root / (16.0 * one_m) / (tb_2 * std::sqrt(tau_bar))) *
         variance;
}

double sin_sum_coeff_closed(double beta, double tau_bar, double marked_blocks) {
  const double a0 = alpha0_of_beta(beta, tau_bar);
  const double t = marked_blocks;
  const double one_m = 1.0 - beta;
  const double root = std::sqrt(3.0 - 4.0 * beta);
  return -one_m / root * t * a0 * a0 / std::sqrt(tau_bar) -
         (1.0 - 2.0 * beta) * (1.0 + beta) / (4.0 * one_m * one_m) * t * a0 / tau_bar -
         root / (16.0 * one_m) * t / (tau_bar * std::sqrt(tau_bar));
}

double cos_sum_coeff_closed(double beta, double tau_bar, double marked_blocks) {
  const double a0 = alpha0_of_beta(beta, tau_bar);
  const double one_m = 1.0 - beta;
  return std::sqrt(3.0 - 4.0 * beta) / (2.0 * one_m * one_m) * marked_blocks * a0 /
         (tau_bar * std::sqrt(tau_bar));
}

}  // namespace detail

double large_k_penalty_constant() {
  const double pi = std::numbers::pi;
  const double rt3 = std::numbers::sqrt3;
  return (rt3 * pi * pi - 3.0 * pi + 9.0 * rt3) / 144.0;
}

double large_k_penalty_prediction(double tau_bar, double variance) {
  if (!(tau_bar > 0.0)) throw InputError("tau_bar must be positive");
  if (!(variance >= 0.0)) throw InputError("variance must be nonnegative");
  return large_k_penalty_constant() * variance / std::pow(tau_bar, 2.5);
}

double delta_alpha(const BlockProfile& profile) {
  return detail::delta_alpha_closed(profile.beta(), profile.tau_bar(),
                                    profile.variance());
}

double delta_eta(const BlockProfile& profile) {
  return detail::delta_eta_closed(profile.beta(), profile.tau_bar(),
                                  profile.variance());
}

double sin_sum_second_order(const BlockProfile& profile) {
  return detail::sin_sum_coeff_closed(profile.beta(), profile.tau_bar(),
                                      profile.marked_blocks());
}

double cos_sum_second_order(const BlockProfile& profile) {
  return detail::cos_sum_coeff_closed(profile.beta(), profile.tau_bar(),
                                      profile.marked_blocks());
}

double penalty_bound_coefficient(double beta) {
  if (!(beta >= 0.0) || !(beta < 0.75)) {
    throw InputError("penalty bound coefficient is defined on [0, 3/4)");
  }
  const double pi = std::numbers::pi;
  const double root = std::sqrt(3.0 - 4.0 * beta);
  const double num = root * (1.0 - 2.0 * beta) * (pi * pi * (1.0 - beta) + 9.0) +
                     3.0 * pi * (-8.0 * beta * beta + 7.0 * beta - 1.0);
  return num / (144.0 * (1.0 - beta));
}

double beta_critical() {
  double lo = 1e-9;
  double hi = 0.75 - 1e-9;
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (penalty_bound_coefficient(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

PerturbationReport degenerate_report(const BlockProfile& profile) {
  PerturbationReport rep;
  rep.num_blocks = profile.num_blocks();
  rep.marked_blocks = profile.marked_blocks();
  rep.tau_bar = profile.tau_bar();
  rep.beta = profile.beta();
  rep.degenerate = true;
  return rep;
}

}  // namespace

PerturbationReport uneven_penalty_report(const BlockProfile& profile,
                                         double epsilon_scale,
                                         bool assert_inequality) {
  if (profile.max_abs_epsilon() == 0.0) {
    return degenerate_report(profile);
  }
  if (!(epsilon_scale > 0.0)) throw InputError("epsilon_scale must be positive");

  const BlockProfile scaled = profile.rescaled(epsilon_scale);
  const BlockProfile even = profile.evened();
  const double beta = profile.beta();
  const double tau_bar = profile.tau_bar();

  if (assert_inequality && !(beta < beta_critical())) {
    throw RegimeError(
        "the penalty inequality is only claimed for beta < beta_critical; "
        "got beta = " + std::to_string(beta));
  }

  const auto cf = detail::even_closed_form(
      profile.num_blocks(), profile.marked_blocks(), tau_bar);
  const double f_even = cf.eta0 - cf.alpha0;

  const auto roots = detail::condition_roots(scaled);
  if (roots.empty()) {
    throw SolveError("stationarity condition has no root in the bracket");
  }
  const double alpha_k = roots.front();

  // Differences of principal-branch eta values are branch-consistent only
  // while the constraint denominator keeps one sign.
  const double den_even = detail::tan_form_parts(even, cf.alpha0).denominator;
  const double den_uneven = detail::tan_form_parts(scaled, alpha_k).denominator;
  if (!(den_even * den_uneven > 0.0)) {
    throw RegimeError(
        "constraint denominator changes sign between the even and uneven "
        "optima; penalty comparison is branch-inconsistent here");
  }
  const double eta_k = detail::eta_tan_principal(scaled, alpha_k);

  PerturbationReport rep;
  rep.num_blocks = profile.num_blocks();
  rep.marked_blocks = profile.marked_blocks();
  rep.tau_bar = tau_bar;
  rep.beta = beta;
  rep.epsilon_scale = epsilon_scale;
  rep.variance = scaled.variance();
  rep.delta_alpha = delta_alpha(scaled);
  rep.delta_eta = delta_eta(scaled);
  rep.predicted_penalty =
      penalty_bound_coefficient(beta) * rep.variance / std::pow(tau_bar, 2.5);
  rep.measured_penalty = f_even - (eta_k - alpha_k);
  rep.ratio = rep.measured_penalty / rep.predicted_penalty;
  if (assert_inequality) {
    rep.inequality_checked = true;
    rep.inequality_holds =
        rep.measured_penalty > rep.predicted_penalty && rep.measured_penalty > 0.0;
  }
  return rep;
}

PerturbationReport large_k_penalty_report(double tau_bar,
                                          const std::vector<double>& pattern,
                                          double epsilon_scale) {
  if (!(tau_bar > 0.0)) throw InputError("tau_bar must be positive");
  if (pattern.size() < 2) throw InputError("pattern needs at least two entries");
  if (!(epsilon_scale > 0.0)) throw InputError("epsilon_scale must be positive");

  double max_abs = 0.0;
  double sum = 0.0;
  for (double e : pattern) {
    max_abs = std::max(max_abs, std::abs(e));
    sum += e;
  }
  if (max_abs == 0.0) throw InputError("pattern must not be identically zero");
  if (std::abs(sum) > 1e-12 * max_abs * static_cast<double>(pattern.size())) {
    throw InputError("pattern epsilons must sum to zero");
  }

  const int t = static_cast<int>(pattern.size());
  std::vector<double> taus(pattern.size());
  double z = 0.0;
  double var = 0.0;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const double eps = pattern[i] / max_abs * epsilon_scale;
    taus[i] = tau_bar * (1.0 + eps);
    if (!(taus[i] > 0.0)) throw InputError("epsilon_scale drives a tau non-positive");
    z += taus[i];
    var += eps * eps;
  }
  var *= tau_bar * tau_bar / static_cast<double>(t);

  // Stationarity condition in the many-blocks limit.
  auto condition = [&](double alpha) {
    double s = 0.0;
    for (double tau : taus) s += tau * std::cos(2.0 * alpha * std::sqrt(tau));
    return 2.0 * s - z;
  };
  const double top =
      std::numbers::pi / (2.0 * std::sqrt(*std::max_element(taus.begin(), taus.end())));
  const auto roots = detail::find_roots(condition, 0.0, top);
  if (roots.empty()) {
    throw SolveError("many-blocks stationarity condition has no root in the bracket");
  }
  const double alpha_k = roots.front();

  double eta_k = 0.0;
  for (double tau : taus) {
    eta_k += std::sqrt(tau) * std::sin(2.0 * alpha_k * std::sqrt(tau));
  }
  eta_k /= z;

  const double alpha0 = std::numbers::pi / (6.0 * std::sqrt(tau_bar));
  const double eta0 = std::numbers::sqrt3 / (2.0 * std::sqrt(tau_bar));

  PerturbationReport rep;
  rep.num_blocks = std::numeric_limits<double>::infinity();
  rep.marked_blocks = t;
  rep.tau_bar = tau_bar;
  rep.beta = 0.0;
  rep.epsilon_scale = epsilon_scale;
  rep.variance = var;
  rep.delta_alpha = detail::delta_alpha_closed(0.0, tau_bar, var);
  rep.delta_eta = detail::delta_eta_closed(0.0, tau_bar, var);
  rep.predicted_penalty = large_k_penalty_prediction(tau_bar, var);
  rep.measured_penalty = (eta0 - alpha0) - (eta_k - alpha_k);
  rep.ratio = rep.measured_penalty / rep.predicted_penalty;
  return rep;
}

}  // namespace qps
