#pragma once

#include <vector>

#include <boost/rational.hpp>

#include "qps/errors.hpp"

namespace qps {

using Rational = boost::rational<long long>;

// Partition of the database: N items split into K blocks of b items each,
// N = b*K exactly.
struct DatabaseGeometry {
  long long total_items = 0;  // N
  long long num_blocks = 0;   // K
  long long block_size = 0;   // b
};

// Marked-block structure. tau_i counts the targets in the i-th marked
// block. Derived quantities are exact rationals so that the epsilons sum
// to zero exactly, which the perturbation analysis relies on.
struct TargetDistribution {
  std::vector<long long> taus;
  long long total_targets = 0;     // z = sum tau_i
  Rational tau_bar;                // z / t
  std::vector<Rational> epsilons;  // tau_i / tau_bar - 1
  Rational variance;               // (tau_bar^2 / t) * sum eps_i^2

  int marked_blocks() const { return static_cast<int>(taus.size()); }
};

struct RotationAngles {
  double theta = 0.0;          // sin^2(theta)   = z / N
  std::vector<double> thetas;  // sin^2(theta_i) = tau_i / b
};

// Real-valued view of the block structure consumed by the large-block
// analytics (cancellation, optimizer, perturbation). Algorithm-mode
// problems convert via Problem::profile(); analysis-mode profiles may
// carry non-integer taus and marked-block fractions up to beta < 3/4.
class BlockProfile {
 public:
  // Relaxed constructor for analysis use: real taus, beta < 3/4.
  static BlockProfile analysis(double num_blocks, std::vector<double> taus);

  double num_blocks() const { return num_blocks_; }            // K
  const std::vector<double>& taus() const { return taus_; }
  int marked_blocks() const { return static_cast<int>(taus_.size()); }  // t
  double total_targets() const { return total_targets_; }      // z
  double tau_bar() const { return tau_bar_; }
  double beta() const { return beta_; }                        // t / K
  double variance() const { return variance_; }
  std::vector<double> epsilons() const;
  double max_abs_epsilon() const;

  // Established at construction: 4t < K, the algorithm's validity regime.
  bool strict_regime() const { return strict_regime_; }

  // Same shape with all taus replaced by tau_bar.
  BlockProfile evened() const;
  // Same shape with epsilons rescaled so that max |eps_i| = scale.
  // Requires an uneven profile.
  BlockProfile rescaled(double scale) const;

 private:
  friend class Problem;
  BlockProfile(double num_blocks, std::vector<double> taus, bool validated);

  double num_blocks_ = 0.0;
  std::vector<double> taus_;
  double total_targets_ = 0.0;
  double tau_bar_ = 0.0;
  double beta_ = 0.0;
  double variance_ = 0.0;
  bool strict_regime_ = false;
};

// A validated algorithm-mode search instance. Immutable after
// construction; safe to share across threads.
class Problem {
 public:
  // Validates the instance and derives every dependent quantity.
  // Throws InputError on malformed values, RegimeError when t >= K/4.
  static Problem make(long long num_blocks, long long block_size,
                      std::vector<long long> taus);

  const DatabaseGeometry& geometry() const { return geometry_; }
  const TargetDistribution& distribution() const { return distribution_; }

  long long total_items() const { return geometry_.total_items; }    // N
  long long num_blocks() const { return geometry_.num_blocks; }      // K
  long long block_size() const { return geometry_.block_size; }      // b
  long long total_targets() const { return distribution_.total_targets; }  // z
  int marked_blocks() const { return distribution_.marked_blocks(); }      // t

  RotationAngles angles() const;
  Rational beta() const;  // exact t / K
  BlockProfile profile() const;

 private:
  Problem(DatabaseGeometry geometry, TargetDistribution distribution)
      : geometry_(geometry), distribution_(std::move(distribution)) {}

  DatabaseGeometry geometry_;
  TargetDistribution distribution_;
};

}  // namespace qps
