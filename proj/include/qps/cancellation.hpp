#pragma once

#include "qps/problem.hpp"

namespace qps {

enum class CancellationRegime { FiniteB, LargeB, LargeK };

// Residual of the constraint that the last reflection annihilates every
// non-target-block amplitude, in one of three regimes.
struct CancellationResidual {
  double value = 0.0;
  CancellationRegime regime = CancellationRegime::FiniteB;
};

// LHS - RHS of the finite-b cancellation constraint
//   N/sqrt(N-z) (t/K - 1/2) cos((2 j1 + 1) theta)
//   = sum_i [ tau_i/sqrt(z) cos(2 j2 theta_i) sin((2 j1 + 1) theta)
//           + sqrt(tau_i (b - tau_i)/(N-z)) sin(2 j2 theta_i) cos((2 j1 + 1) theta)
//           - sqrt(tau_i (b - tau_i)/z) sin(2 j2 theta_i) sin((2 j1 + 1) theta)
//           + (b - tau_i)/sqrt(N-z) cos(2 j2 theta_i) cos((2 j1 + 1) theta) ].
// Zero exactly when the u coordinate vanishes after the last reflection;
// the u coordinate equals 2 sqrt(b (K - t)) / N times this residual.
double residual_finite_b(const Problem& problem, double j1, double j2);

// Smallest j1 > 0 zeroing the finite-b residual, found by bracketed
// bisection + secant on (2 j1 + 1) theta in (0, pi). Throws SolveError when
// the residual does not change sign in the bracket.
double solve_j1_finite_b(const Problem& problem, double j2);

// Large-block (b -> infinity) constraint solved for eta on the principal
// branch:
//   eta = 1/2 sqrt(K/z) arctan( 2 sqrt(K) sum_i sqrt(tau_i) sin(2 alpha sqrt(tau_i))
//                              / [sqrt(z) (K - 4 sum_i sin^2(alpha sqrt(tau_i)))] ).
// The denominator is positive whenever t < K/4; outside that regime the
// branch is ambiguous and a RegimeError is thrown.
double eta_large_b(const BlockProfile& profile, double alpha);
double eta_large_b(const Problem& problem, double alpha);

// Many-blocks (K -> infinity) limit:
//   eta = 1/z sum_i sqrt(tau_i) sin(2 alpha sqrt(tau_i)).
double eta_large_k(const BlockProfile& profile, double alpha);

namespace detail {

struct TanFormParts {
  double numerator = 0.0;
  double denominator = 0.0;
};

TanFormParts tan_form_parts(const BlockProfile& profile, double alpha);

// Principal-branch evaluation without the regime guard. For t >= K/4 the
// denominator may go negative; differences of two evaluations with the
// same denominator sign are still branch-consistent, which is what the
// relaxed perturbation analysis uses.
double eta_tan_principal(const BlockProfile& profile, double alpha);

}  // namespace detail

}  // namespace qps
