#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qps/optimizer.hpp"
#include "qps/perturbation.hpp"

using namespace qps;

namespace {

BlockProfile pair_profile(double num_blocks, double tau_bar, double eps) {
  return BlockProfile::analysis(
      num_blocks, {tau_bar * (1.0 + eps), tau_bar * (1.0 - eps)});
}

}  // namespace

TEST_CASE("the many-blocks penalty constant") {
  const double c = large_k_penalty_constant();
  CHECK(c > 0.0);
  CHECK(std::abs(c - 0.1615) < 5e-5);
  CHECK(std::abs(c - penalty_bound_coefficient(0.0)) < 1e-15);
}

TEST_CASE("penalty prediction scales as variance over tau_bar^(5/2)") {
  CHECK(large_k_penalty_prediction(3.0, 0.0) == 0.0);
  CHECK(large_k_penalty_prediction(1.0, 1.0) ==
        doctest::Approx(large_k_penalty_constant()).epsilon(1e-15));
  const double ratio =
      large_k_penalty_prediction(2.0, 1.0) / large_k_penalty_prediction(1.0, 1.0);
  CHECK(ratio == doctest::Approx(std::pow(2.0, -2.5)).epsilon(1e-12));
  CHECK_THROWS_AS(large_k_penalty_prediction(-1.0, 1.0), InputError);
}

TEST_CASE("optimum shifts vanish for even distributions") {
  const BlockProfile even = BlockProfile::analysis(100.0, {4.0, 4.0});
  CHECK(delta_alpha(even) == 0.0);
  CHECK(delta_eta(even) == 0.0);
}

TEST_CASE("the alpha shift is negative below beta = 1/2") {
  for (double beta : {0.01, 0.1, 0.3, 0.45}) {
    const BlockProfile p = pair_profile(2.0 / beta, 4.0, 0.1);
    CHECK(delta_alpha(p) < 0.0);
  }
}

TEST_CASE("closed-form shifts match optimizer finite differences") {
  const double num_blocks = 100.0;
  const double tau_bar = 4.0;
  const auto cf = detail::even_closed_form(num_blocks, 2.0, tau_bar);
  for (double eps : {0.05, 0.01}) {
    const BlockProfile p = pair_profile(num_blocks, tau_bar, eps);
    const OptimizationResult opt = solve_uneven_optimum(p);
    const double fd_alpha = opt.alpha_star - cf.alpha0;
    const double fd_eta = opt.eta_star - cf.eta0;
    const double tol = std::max(10.0 * eps, 1e-3);
    CHECK(std::abs(fd_alpha - delta_alpha(p)) <= tol * std::abs(delta_alpha(p)));
    CHECK(std::abs(fd_eta - delta_eta(p)) <= tol * std::abs(delta_eta(p)));
  }
}

TEST_CASE("shift difference approaches the many-blocks constant") {
  const double tau_bar = 3.0;
  const BlockProfile p = pair_profile(2e9, tau_bar, 0.05);
  const double gap = delta_alpha(p) - delta_eta(p);
  const double expect = large_k_penalty_constant() * p.variance() /
                        std::pow(tau_bar, 2.5);
  CHECK(gap == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("block-sum coefficients reproduce direct summation") {
  const double num_blocks = 100.0;
  const double tau_bar = 4.0;
  const double eps = 1e-3;
  const BlockProfile p = pair_profile(num_blocks, tau_bar, eps);
  const auto cf = detail::even_closed_form(num_blocks, 2.0, tau_bar);
  const double alpha_k = cf.alpha0 + delta_alpha(p);

  double sin_sum = 0.0;
  double cos_sum = 0.0;
  for (double tau : p.taus()) {
    const double r = std::sqrt(tau);
    sin_sum += r * std::sin(2.0 * alpha_k * r);
    cos_sum += std::cos(2.0 * alpha_k * r);
  }
  const double t = 2.0;
  const double phase = 2.0 * cf.alpha0 * std::sqrt(tau_bar);
  const double p_direct =
      (sin_sum - t * std::sqrt(tau_bar) * std::sin(phase)) / p.variance();
  const double q_direct = (cos_sum - t * std::cos(phase)) / p.variance();

  CHECK(std::abs(p_direct - sin_sum_second_order(p)) <
        1e-2 * std::abs(sin_sum_second_order(p)));
  CHECK(std::abs(q_direct - cos_sum_second_order(p)) <
        1e-2 * std::abs(cos_sum_second_order(p)));
  CHECK(cos_sum_second_order(p) > 0.0);
}

TEST_CASE("the eta shift assembles from the block-sum coefficients") {
  for (double beta : {0.02, 0.1, 0.2}) {
    const BlockProfile p = pair_profile(2.0 / beta, 5.0, 0.07);
    const double t = 2.0;
    const double assembled =
        ((1.0 - 2.0 * beta) * sin_sum_second_order(p) / (t * p.tau_bar()) -
         beta * std::sqrt(3.0 - 4.0 * beta) * cos_sum_second_order(p) /
             (t * std::sqrt(p.tau_bar()))) *
        p.variance();
    CHECK(assembled == doctest::Approx(delta_eta(p)).epsilon(1e-12));
  }
}

TEST_CASE("bound coefficient values and domain") {
  CHECK(penalty_bound_coefficient(0.5) ==
        doctest::Approx(std::numbers::pi / 48.0).epsilon(1e-15));
  CHECK_THROWS_AS(penalty_bound_coefficient(-0.01), InputError);
  CHECK_THROWS_AS(penalty_bound_coefficient(0.75), InputError);
}

TEST_CASE("critical beta separates the bound's sign") {
  const double bc = beta_critical();
  CHECK(std::abs(bc - 0.6281) < 5e-4);
  for (double beta : {0.05, 0.2, 0.4, 0.6}) {
    CHECK(penalty_bound_coefficient(beta) > 0.0);
  }
  for (double beta : {0.64, 0.7, 0.74}) {
    CHECK(penalty_bound_coefficient(beta) < 0.0);
  }
  // Squaring the radical turns the root equation into a degree-5
  // polynomial; it must vanish at the same point.
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double quintic =
      (3.0 - 4.0 * bc) * std::pow(1.0 - 2.0 * bc, 2) *
          std::pow(pi2 * (1.0 - bc) + 9.0, 2) -
      9.0 * pi2 * std::pow(8.0 * bc * bc - 7.0 * bc + 1.0, 2);
  CHECK(std::abs(quintic) < 1e-6);
}

TEST_CASE("even input yields a degenerate report") {
  const BlockProfile even = BlockProfile::analysis(50.0, {3.0, 3.0});
  const PerturbationReport rep = uneven_penalty_report(even, 0.05);
  CHECK(rep.degenerate);
  CHECK(rep.measured_penalty == 0.0);
  CHECK(rep.predicted_penalty == 0.0);
}

TEST_CASE("measured penalty approaches the many-blocks prediction") {
  // At huge K the bound coefficient is asymptotically tight, so the strict
  // inequality is not asserted; the point is ratio -> 1.
  const BlockProfile p = pair_profile(1e6, 100.0, 0.5);
  const PerturbationReport rep =
      uneven_penalty_report(p, 0.05, /*assert_inequality=*/false);
  CHECK(std::abs(rep.ratio - 1.0) < 0.1);
  const PerturbationReport finer =
      uneven_penalty_report(p, 0.01, /*assert_inequality=*/false);
  CHECK(std::abs(finer.ratio - 1.0) < std::abs(rep.ratio - 1.0));
}

TEST_CASE("penalty inequality holds across the sampled beta range") {
  for (double beta : {0.05, 0.1, 0.2, 0.4, 0.6}) {
    const BlockProfile p = pair_profile(2.0 / beta, 4.0, 0.5);
    const PerturbationReport rep = uneven_penalty_report(p, 0.05);
    CAPTURE(beta);
    CHECK(rep.inequality_holds);
    CHECK(rep.measured_penalty > rep.predicted_penalty);
    CHECK(rep.measured_penalty > 0.0);
  }
}

TEST_CASE("inequality assertion is refused beyond the critical beta") {
  const BlockProfile p = pair_profile(2.0 / 0.65, 4.0, 0.5);
  CHECK_THROWS_AS(uneven_penalty_report(p, 0.05, /*assert_inequality=*/true),
                  RegimeError);
  // Without the assertion the report is still produced.
  const PerturbationReport rep =
      uneven_penalty_report(p, 0.05, /*assert_inequality=*/false);
  CHECK_FALSE(rep.inequality_checked);
  CHECK(std::isfinite(rep.measured_penalty));
  CHECK(rep.predicted_penalty < 0.0);  // bound coefficient is negative here
}

TEST_CASE("measured penalty obeys the second-order scaling law") {
  const BlockProfile shape = pair_profile(1000.0, 4.0, 0.5);
  double prev_dev = std::numeric_limits<double>::infinity();
  double prev_measured = 0.0;
  bool have_prev = false;
  for (double eps : {0.1, 0.05, 0.025}) {
    const double measured = uneven_penalty_report(shape, eps).measured_penalty;
    if (have_prev) {
      const double dev = std::abs(measured / prev_measured - 0.25);
      CHECK(dev < prev_dev);
      prev_dev = dev;
    }
    prev_measured = measured;
    have_prev = true;
  }
}

TEST_CASE("many-blocks convergence sharpens tenfold epsilon drops") {
  const std::vector<double> pattern{1.0, -1.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0};
  for (double tau_bar : {1.0, 4.0}) {
    const double dev_coarse =
        std::abs(large_k_penalty_report(tau_bar, pattern, 0.1).ratio - 1.0);
    const double dev_fine =
        std::abs(large_k_penalty_report(tau_bar, pattern, 0.01).ratio - 1.0);
    const double factor = dev_coarse / dev_fine;
    CHECK(factor >= 5.0);
    CHECK(factor <= 20.0);
  }
}

TEST_CASE("many-blocks report validates its pattern") {
  CHECK_THROWS_AS(large_k_penalty_report(4.0, {1.0, 1.0}, 0.1), InputError);
  CHECK_THROWS_AS(large_k_penalty_report(4.0, {0.0, 0.0}, 0.1), InputError);
  CHECK_THROWS_AS(large_k_penalty_report(-4.0, {1.0, -1.0}, 0.1), InputError);
  CHECK_THROWS_AS(large_k_penalty_report(4.0, {1.0, -1.0}, 1.5), InputError);
}
