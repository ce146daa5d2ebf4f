#include "qps/full_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qps {

namespace {

std::vector<std::vector<long long>> canonical_slots(const Problem& problem) {
  std::vector<std::vector<long long>> slots(problem.marked_blocks());
  for (int i = 0; i < problem.marked_blocks(); ++i) {
    const long long tau = problem.distribution().taus[i];
    slots[i].resize(tau);
    for (long long s = 0; s < tau; ++s) slots[i][s] = s;
  }
  return slots;
}

void check_cap(const Problem& problem, long long cap) {
  if (problem.total_items() > cap) {
    throw ResourceError("N = " + std::to_string(problem.total_items()) +
                        " exceeds the full-simulation cap " + std::to_string(cap));
  }
}

}  // namespace

FullState uniform_state(const Problem& problem) {
  return uniform_state(problem, canonical_slots(problem));
}

FullState uniform_state(const Problem& problem,
                        const std::vector<std::vector<long long>>& target_slots) {
  const long long n = problem.total_items();
  const long long b = problem.block_size();
  const int t = problem.marked_blocks();
  if (static_cast<int>(target_slots.size()) != t) {
    throw InputError("target_slots must list one slot set per marked block");
  }

  FullState state;
  state.block_size = b;
  state.amps.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
  state.is_target.assign(n, 0);
  for (int i = 0; i < t; ++i) {
    const long long tau = problem.distribution().taus[i];
    if (static_cast<long long>(target_slots[i].size()) != tau) {
      throw InputError("marked block " + std::to_string(i) + " needs exactly " +
                       std::to_string(tau) + " target slots");
    }
    for (long long slot : target_slots[i]) {
      if (slot < 0 || slot >= b) {
        throw InputError("target slot outside the block");
      }
      std::uint8_t& flag = state.is_target[i * b + slot];
      if (flag) throw InputError("duplicate target slot");
      flag = 1;
    }
  }
  return state;
}

void oracle_reflect(FullState& state) {
  for (std::size_t y = 0; y < state.amps.size(); ++y) {
    if (state.is_target[y]) state.amps[y] = -state.amps[y];
  }
}

void global_diffusion(FullState& state) {
  double mean = 0.0;
  for (double a : state.amps) mean += a;
  mean /= static_cast<double>(state.amps.size());
  for (double& a : state.amps) a = 2.0 * mean - a;
}

void local_diffusion(FullState& state) {
  const long long b = state.block_size;
  const long long k = state.blocks();
  for (long long blk = 0; blk < k; ++blk) {
    double mean = 0.0;
    for (long long y = 0; y < b; ++y) mean += state.amps[blk * b + y];
    mean /= static_cast<double>(b);
    for (long long y = 0; y < b; ++y) {
      double& a = state.amps[blk * b + y];
      a = 2.0 * mean - a;
    }
  }
}

FullState run_partial_search(const Problem& problem, long long j1, long long j2,
                             long long cap) {
  return run_partial_search(problem, j1, j2, canonical_slots(problem), cap);
}

FullState run_partial_search(const Problem& problem, long long j1, long long j2,
                             const std::vector<std::vector<long long>>& target_slots,
                             long long cap) {
  if (j1 < 0 || j2 < 0) throw InputError("iteration counts must be nonnegative");
  check_cap(problem, cap);

  FullState state = uniform_state(problem, target_slots);
  for (long long i = 0; i < j1; ++i) {
    oracle_reflect(state);
    global_diffusion(state);
  }
  for (long long i = 0; i < j2; ++i) {
    oracle_reflect(state);
    local_diffusion(state);
  }
  // I_s1 is the negated inversion about the global average.
  global_diffusion(state);
  for (double& a : state.amps) a = -a;
  return state;
}

ReducedState project_to_reduced(const Problem& problem, const FullState& state,
                                double class_tol) {
  const long long b = problem.block_size();
  const long long n = problem.total_items();
  const int t = problem.marked_blocks();
  if (state.items() != n || state.block_size != b) {
    throw InputError("state layout does not match the problem");
  }

  // Representative amplitude per class, with an equality check across the
  // class. Unequal amplitudes signal a broken operator, not bad input.
  auto class_value = [&](long long begin, long long end, bool want_target,
                         const char* label) {
    double value = 0.0;
    bool seen = false;
    for (long long y = begin; y < end; ++y) {
      if (static_cast<bool>(state.is_target[y]) != want_target) continue;
      if (!seen) {
        value = state.amps[y];
        seen = true;
      } else if (std::abs(state.amps[y] - value) > class_tol) {
        throw InvariantError(std::string("class equality violated in ") + label);
      }
    }
    if (!seen) throw InvariantError(std::string("empty class: ") + label);
    return value;
  };

  Eigen::VectorXd amps(2 * t + 1);
  for (int i = 0; i < t; ++i) {
    const double tau = static_cast<double>(problem.distribution().taus[i]);
    const double a_target = class_value(i * b, (i + 1) * b, true, "targets");
    const double a_nontarget = class_value(i * b, (i + 1) * b, false, "non-targets");
    amps[2 * i] = std::sqrt(tau) * a_target;
    amps[2 * i + 1] = std::sqrt(b - tau) * a_nontarget;
  }
  const double a_unmarked =
      class_value(static_cast<long long>(t) * b, n, false, "unmarked blocks");
  const double k = static_cast<double>(problem.num_blocks());
  amps[2 * t] = std::sqrt(static_cast<double>(b) * (k - t)) * a_unmarked;
  return ReducedState{std::move(amps)};
}

double success_probability(const Problem& problem, const FullState& state) {
  if (state.items() != problem.total_items() ||
      state.block_size != problem.block_size()) {
    throw InputError("state layout does not match the problem");
  }
  const long long b = problem.block_size();
  const long long k = state.blocks();
  double mass = 0.0;
  for (long long blk = 0; blk < k; ++blk) {
    bool marked = false;
    for (long long y = blk * b; y < (blk + 1) * b && !marked; ++y) {
      marked = state.is_target[y] != 0;
    }
    if (!marked) continue;
    for (long long y = blk * b; y < (blk + 1) * b; ++y) {
      mass += state.amps[y] * state.amps[y];
    }
  }
  return mass;
}

}  // namespace qps
