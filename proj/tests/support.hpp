#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "qps/problem.hpp"

namespace qps::testing {

// Deterministic random algorithm-mode instance with N <= max_items.
inline Problem random_instance(std::mt19937& rng, long long max_items = 1 << 16,
                               long long min_blocks = 8, long long max_blocks = 64) {
  std::uniform_int_distribution<long long> k_dist(min_blocks, max_blocks);
  const long long k = k_dist(rng);
  const long long b_cap = std::max<long long>(2, max_items / k);
  std::uniform_int_distribution<long long> b_dist(2, b_cap);
  const long long b = b_dist(rng);

  const long long t_max = std::max<long long>(1, (k - 1) / 4);
  std::uniform_int_distribution<long long> t_dist(1, t_max);
  const long long t = t_dist(rng);

  std::uniform_int_distribution<long long> tau_dist(1, b - 1);
  std::vector<long long> taus(t);
  for (auto& tau : taus) tau = tau_dist(rng);
  return Problem::make(k, b, std::move(taus));
}

// Uneven variant: guarantees at least two distinct taus (requires b >= 3).
inline Problem random_uneven_instance(std::mt19937& rng,
                                      long long max_items = 1 << 16) {
  for (;;) {
    Problem p = random_instance(rng, max_items);
    if (p.block_size() < 3 || p.marked_blocks() < 2) continue;
    const auto& taus = p.distribution().taus;
    if (std::adjacent_find(taus.begin(), taus.end(),
                           std::not_equal_to<>()) != taus.end()) {
      return p;
    }
  }
}

}  // namespace qps::testing
