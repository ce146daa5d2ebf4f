#include "qps/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace qps {

namespace {

using Int128 = __int128;

long long checked_ll(Int128 v, const char* what) {
  if (v > std::numeric_limits<long long>::max() ||
      v < std::numeric_limits<long long>::min()) {
    throw InputError(std::string(what) + " exceeds 64-bit range; instance too large");
  }
  return static_cast<long long>(v);
}

Int128 gcd128(Int128 a, Int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

Rational make_rational128(Int128 num, Int128 den, const char* what) {
  const Int128 g = gcd128(num, den);
  if (g != 0) {
    num /= g;
    den /= g;
  }
  return Rational(checked_ll(num, what), checked_ll(den, what));
}

}  // namespace

BlockProfile::BlockProfile(double num_blocks, std::vector<double> taus,
                           bool /*validated*/)
    : num_blocks_(num_blocks), taus_(std::move(taus)) {
  const double t = static_cast<double>(taus_.size());
  total_targets_ = 0.0;
  for (double tau : taus_) total_targets_ += tau;
  tau_bar_ = total_targets_ / t;
  beta_ = t / num_blocks_;
  double sum_eps_sq = 0.0;
  for (double tau : taus_) {
    const double eps = tau / tau_bar_ - 1.0;
    sum_eps_sq += eps * eps;
  }
  variance_ = (tau_bar_ * tau_bar_ / t) * sum_eps_sq;
  strict_regime_ = 4.0 * t < num_blocks_;
}

BlockProfile BlockProfile::analysis(double num_blocks, std::vector<double> taus) {
  if (!(num_blocks > 0.0) || !std::isfinite(num_blocks)) {
    throw InputError("analysis profile requires a positive finite block count");
  }
  if (taus.empty()) {
    throw InputError("analysis profile requires at least one marked block");
  }
  for (double tau : taus) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
      throw InputError("analysis profile requires positive finite taus");
    }
  }
  const double beta = static_cast<double>(taus.size()) / num_blocks;
  if (!(beta < 0.75)) {
    throw RegimeError("analysis profile requires beta = t/K < 3/4, got beta = " +
                      std::to_string(beta));
  }
  return BlockProfile(num_blocks, std::move(taus), true);
}

std::vector<double> BlockProfile::epsilons() const {
  std::vector<double> eps;
  eps.reserve(taus_.size());
  for (double tau : taus_) eps.push_back(tau / tau_bar_ - 1.0);
  return eps;
}

double BlockProfile::max_abs_epsilon() const {
  double m = 0.0;
  for (double tau : taus_) m = std::max(m, std::abs(tau / tau_bar_ - 1.0));
  return m;
}

BlockProfile BlockProfile::evened() const {
  std::vector<double> even_taus(taus_.size(), tau_bar_);
  return BlockProfile(num_blocks_, std::move(even_taus), true);
}

BlockProfile BlockProfile::rescaled(double scale) const {
  const double m = max_abs_epsilon();
  if (m == 0.0) {
    throw InputError("cannot rescale an even profile: all epsilons are zero");
  }
  std::vector<double> taus;
  taus.reserve(taus_.size());
  for (double tau : taus_) {
    const double eps = tau / tau_bar_ - 1.0;
    const double scaled = tau_bar_ * (1.0 + eps / m * scale);
    if (!(scaled > 0.0)) {
      throw InputError("rescaled epsilon drives a tau non-positive");
    }
    taus.push_back(scaled);
  }
  return BlockProfile(num_blocks_, std::move(taus), true);
}

Problem Problem::make(long long num_blocks, long long block_size,
                      std::vector<long long> taus) {
  if (num_blocks < 2) throw InputError("K must be at least 2");
  if (block_size < 2) throw InputError("b must be at least 2");
  if (taus.empty()) throw InputError("taus must be nonempty");

  const long long t = static_cast<long long>(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (taus[i] < 1 || taus[i] > block_size - 1) {
      throw InputError("tau_" + std::to_string(i + 1) + " = " +
                       std::to_string(taus[i]) + " outside [1, b-1] = [1, " +
                       std::to_string(block_size - 1) + "]");
    }
  }
  // Validity regime of the partial search algorithm.
  if (4 * t >= num_blocks) {
    throw RegimeError("t = " + std::to_string(t) + " >= K/4 = " +
                      std::to_string(num_blocks) + "/4; outside the partial "
                      "search regime t < K/4");
  }

  const Int128 n128 = static_cast<Int128>(num_blocks) * block_size;
  DatabaseGeometry geometry;
  geometry.total_items = checked_ll(n128, "N = b*K");
  geometry.num_blocks = num_blocks;
  geometry.block_size = block_size;

  TargetDistribution dist;
  dist.taus = std::move(taus);
  Int128 z128 = 0;
  for (long long tau : dist.taus) z128 += tau;
  dist.total_targets = checked_ll(z128, "z");
  dist.tau_bar = Rational(dist.total_targets, t);

  // eps_i = tau_i / tau_bar - 1 = (t*tau_i - z) / z. Integer numerators sum
  // to zero exactly.
  dist.epsilons.reserve(dist.taus.size());
  Int128 sum_sq = 0;
  for (long long tau : dist.taus) {
    const Int128 num = static_cast<Int128>(t) * tau - z128;
    dist.epsilons.push_back(make_rational128(num, z128, "epsilon"));
    sum_sq += num * num;
  }
  // (tau_bar^2 / t) * sum eps_i^2 collapses to sum (t*tau_i - z)^2 / t^3.
  dist.variance = make_rational128(
      sum_sq, static_cast<Int128>(t) * t * t, "variance");

  return Problem(geometry, std::move(dist));
}

RotationAngles Problem::angles() const {
  RotationAngles out;
  out.theta = std::asin(std::sqrt(static_cast<double>(total_targets()) /
                                  static_cast<double>(total_items())));
  out.thetas.reserve(distribution_.taus.size());
  for (long long tau : distribution_.taus) {
    out.thetas.push_back(std::asin(std::sqrt(
        static_cast<double>(tau) / static_cast<double>(block_size()))));
  }
  return out;
}

Rational Problem::beta() const {
  return Rational(marked_blocks(), num_blocks());
}

BlockProfile Problem::profile() const {
  std::vector<double> taus;
  taus.reserve(distribution_.taus.size());
  for (long long tau : distribution_.taus) {
    taus.push_back(static_cast<double>(tau));
  }
  return BlockProfile(static_cast<double>(num_blocks()), std::move(taus), true);
}

}  // namespace qps
