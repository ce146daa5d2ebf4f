#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qps/cancellation.hpp"
#include "qps/optimizer.hpp"
#include "qps/reduced_sim.hpp"
#include "support.hpp"

using namespace qps;

TEST_CASE("residual is proportional to the post-reflection u coordinate") {
  const Problem p = Problem::make(16, 64, {1, 3});
  const double n = 1024.0;
  const double scale = 2.0 * std::sqrt(64.0 * 14.0) / n;
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> j1_dist(0.0, 12.0);
  std::uniform_real_distribution<double> j2_dist(0.0, 8.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double j1 = j1_dist(rng);
    const double j2 = j2_dist(rng);
    const double res = residual_finite_b(p, j1, j2);
    const ReducedState final = final_reflection(p, evolve_analytic(p, j1, j2));
    CHECK(final.unmarked_amp() == doctest::Approx(scale * res).epsilon(1e-10));
  }
}

TEST_CASE("solved schedules satisfy the residual postcondition") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const Problem p = testing::random_instance(rng, 1 << 14);
    std::uniform_real_distribution<double> j2_dist(0.0, 6.0);
    const double j2 = j2_dist(rng);
    const double j1 = solve_j1_finite_b(p, j2);
    CHECK(j1 > 0.0);
    CHECK(std::abs(residual_finite_b(p, j1, j2)) < 1e-10);
  }
}

TEST_CASE("residual changes sign across the solver root") {
  const Problem p = Problem::make(16, 64, {1, 3});
  const double j2 = 3.25;
  const double j1 = solve_j1_finite_b(p, j2);
  const double before = residual_finite_b(p, j1 - 0.5, j2);
  const double after = residual_finite_b(p, j1 + 0.5, j2);
  CHECK(before * after < 0.0);
}

TEST_CASE("cancellation differs from the full-search quarter turn") {
  // Single marked block, no local iterations: the cancellation root is not
  // the (2 j1 + 1) theta = pi/2 schedule, yet it still drives the final
  // non-target amplitude (and hence failure probability) to zero.
  const Problem p = Problem::make(9, 32, {5});
  const double theta = p.angles().theta;
  const double j1 = solve_j1_finite_b(p, 0.0);
  const double quarter_turn_j1 = (std::numbers::pi / 2.0 / theta - 1.0) / 2.0;
  CHECK(std::abs(j1 - quarter_turn_j1) > 0.1);
  const ReducedState final = final_reflection(p, evolve_analytic(p, j1, 0.0));
  CHECK(success_probability(p, final) > 1.0 - 1e-9);
}

TEST_CASE("finite-b solutions approach the large-block parametrization") {
  // j1(b) = (pi/4) sqrt(N/z) - eta sqrt(b) with eta -> eta_large_b(alpha)
  // at rate O(1/sqrt(b)).
  const long long k = 16;
  const double alpha = 0.35;
  const BlockProfile profile = BlockProfile::analysis(16.0, {2.0, 2.0});
  const double eta_limit = eta_large_b(profile, alpha);

  double prev_err = std::numeric_limits<double>::infinity();
  for (long long b : {1LL << 10, 1LL << 14, 1LL << 18}) {
    const Problem p = Problem::make(k, b, {2, 2});
    const double sqrt_b = std::sqrt(static_cast<double>(b));
    const double j2 = alpha * sqrt_b;
    const double j1 = solve_j1_finite_b(p, j2);
    const double n_over_z = static_cast<double>(p.total_items()) /
                            static_cast<double>(p.total_targets());
    const double eta_est =
        (std::numbers::pi / 4.0 * std::sqrt(n_over_z) - j1) / sqrt_b;
    const double err = std::abs(eta_est - eta_limit);
    CHECK(err < 0.55 * prev_err);  // expected contraction ~1/4 per 16x in b
    prev_err = err;
  }
  CHECK(prev_err < 1e-3);
}

TEST_CASE("large-block eta vanishes with alpha and matches the even closed form") {
  const BlockProfile even = BlockProfile::analysis(100.0, {3.0, 3.0});
  const double tiny = eta_large_b(even, 1e-6);
  CHECK(tiny > 0.0);
  CHECK(tiny < 1e-4);

  const OptimizationResult opt = even_optimum(even);
  CHECK(eta_large_b(even, opt.alpha_star) ==
        doctest::Approx(opt.eta_star).epsilon(1e-12));
}

TEST_CASE("large-block eta converges to the many-blocks form") {
  const std::vector<double> taus{1.0, 3.0, 2.0};
  const double alpha = 0.4;
  const double limit = eta_large_k(BlockProfile::analysis(100.0, taus), alpha);

  const double at_1e6 =
      eta_large_b(BlockProfile::analysis(1e6, taus), alpha);
  CHECK(std::abs(at_1e6 / limit - 1.0) < 1e-4);

  const double at_1e8 =
      eta_large_b(BlockProfile::analysis(1e8, taus), alpha);
  CHECK(std::abs(at_1e8 / limit - 1.0) < 1e-6);
}

TEST_CASE("many-blocks eta has the even closed form") {
  const double tau_bar = 5.0;
  const BlockProfile even = BlockProfile::analysis(1000.0, {tau_bar, tau_bar});
  const double alpha = std::numbers::pi / (6.0 * std::sqrt(tau_bar));
  // sin(2 alpha sqrt(tau_bar)) = sin(pi/3) = sqrt(3)/2
  CHECK(eta_large_k(even, alpha) ==
        doctest::Approx(std::numbers::sqrt3 / (2.0 * std::sqrt(tau_bar)))
            .epsilon(1e-14));
}

TEST_CASE("constraint denominator is positive throughout the strict regime") {
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> alpha_dist(1e-3, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Problem p = testing::random_instance(rng, 1 << 12);
    const auto parts =
        detail::tan_form_parts(p.profile(), alpha_dist(rng));
    CHECK(parts.denominator > 0.0);
  }
}

TEST_CASE("relaxed block fractions are rejected by the strict constraint") {
  const BlockProfile relaxed = BlockProfile::analysis(10.0, {2.0, 2.0, 2.0});
  CHECK_FALSE(relaxed.strict_regime());
  CHECK_THROWS_AS(eta_large_b(relaxed, 0.3), RegimeError);
  CHECK_THROWS_AS(eta_large_b(BlockProfile::analysis(100.0, {2.0, 2.0}), 0.0),
                  InputError);
}
