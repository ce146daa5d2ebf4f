#pragma once

#include <cstdint>
#include <vector>

#include "qps/problem.hpp"
#include "qps/reduced_sim.hpp"

namespace qps {

// Dense statevector over all N items. Layout is block-major: item y of
// block k lives at index k*b + y. Marked blocks are blocks 0..t-1; by
// default the first tau_i slots of marked block i hold its targets (the
// algorithm is invariant under within-block permutations, which tests
// verify by shuffling the placement).
struct FullState {
  std::vector<double> amps;
  std::vector<std::uint8_t> is_target;
  long long block_size = 0;

  long long items() const { return static_cast<long long>(amps.size()); }
  long long blocks() const { return items() / block_size; }
};

inline constexpr long long kDefaultFullSimCap = 1LL << 20;

// Uniform superposition with canonical target placement.
FullState uniform_state(const Problem& problem);
// Uniform superposition with explicit target slots per marked block
// (slot indices are within-block, each in [0, b)).
FullState uniform_state(const Problem& problem,
                        const std::vector<std::vector<long long>>& target_slots);

// Negates the amplitude of every target item.
void oracle_reflect(FullState& state);

// a_y -> 2*mean - a_y over the whole database (inversion about the
// global average).
void global_diffusion(FullState& state);

// a_y -> 2*block_mean - a_y independently within each block.
void local_diffusion(FullState& state);

// j1 x (global_diffusion . oracle_reflect), then
// j2 x (local_diffusion  . oracle_reflect), then the last reflection
// I_s1 (the negated global diffusion), starting from the uniform state.
// Throws ResourceError when N exceeds the cap.
FullState run_partial_search(const Problem& problem, long long j1, long long j2,
                             long long cap = kDefaultFullSimCap);
FullState run_partial_search(const Problem& problem, long long j1, long long j2,
                             const std::vector<std::vector<long long>>& target_slots,
                             long long cap = kDefaultFullSimCap);

// Projects onto the invariant subspace: coordinates
// (sqrt(tau_i) a_target(i), sqrt(b - tau_i) a_nontarget(i), ...,
// sqrt(b (K - t)) a_unmarked). Amplitudes must be equal within each class
// to class_tol; a violation signals a simulator bug and throws
// InvariantError.
ReducedState project_to_reduced(const Problem& problem, const FullState& state,
                                double class_tol = 1e-9);

// Probability mass on blocks that contain at least one target.
double success_probability(const Problem& problem, const FullState& state);

}  // namespace qps
