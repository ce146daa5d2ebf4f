"""Exact laboratory for quantum partial search over blocked databases.

The native module simulates the block-search pipeline (global iterations,
local iterations, final reflection) exactly, solves its cancellation and
query-optimization equations, and evaluates the second-order perturbation
analysis of uneven target distributions.
"""

from qpslab._core import (
    PERTURBATION_CSV_HEADER,
    BlockProfile,
    FullState,
    InputError,
    InvariantError,
    OptimizationResult,
    PerturbationReport,
    Problem,
    RegimeError,
    ResourceError,
    Schedule,
    SolveError,
    __version__,
    beta_critical,
    cos_sum_second_order,
    delta_alpha,
    delta_eta,
    eta_large_b,
    eta_large_k,
    even_optimum,
    evolve_analytic,
    evolve_operator,
    final_reflection,
    g1_matrix,
    g2_matrix,
    grid_oracle,
    initial_state,
    large_k_penalty_constant,
    large_k_penalty_prediction,
    large_k_penalty_report,
    make_problem,
    optimality_residual,
    penalty_bound_coefficient,
    project_to_reduced,
    residual_finite_b,
    run_partial_search,
    sin_sum_second_order,
    solve_j1_finite_b,
    solve_uneven_optimum,
    success_probability,
    total_queries,
    uneven_penalty_report,
    uniform_state,
)

__all__ = [
    "PERTURBATION_CSV_HEADER",
    "BlockProfile",
    "FullState",
    "InputError",
    "InvariantError",
    "OptimizationResult",
    "PerturbationReport",
    "Problem",
    "RegimeError",
    "ResourceError",
    "Schedule",
    "SolveError",
    "__version__",
    "beta_critical",
    "cos_sum_second_order",
    "delta_alpha",
    "delta_eta",
    "eta_large_b",
    "eta_large_k",
    "even_optimum",
    "evolve_analytic",
    "evolve_operator",
    "final_reflection",
    "g1_matrix",
    "g2_matrix",
    "grid_oracle",
    "initial_state",
    "large_k_penalty_constant",
    "large_k_penalty_prediction",
    "large_k_penalty_report",
    "make_problem",
    "optimality_residual",
    "penalty_bound_coefficient",
    "project_to_reduced",
    "residual_finite_b",
    "run_partial_search",
    "sin_sum_second_order",
    "solve_j1_finite_b",
    "solve_uneven_optimum",
    "success_probability",
    "total_queries",
    "uneven_penalty_report",
    "uniform_state",
]
