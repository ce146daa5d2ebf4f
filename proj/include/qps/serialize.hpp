#pragma once

#include <string>

#include <json.hpp>

#include "qps/cancellation.hpp"
#include "qps/optimizer.hpp"
#include "qps/perturbation.hpp"
#include "qps/problem.hpp"
#include "qps/reduced_sim.hpp"

namespace qps {

// Shortest round-trip decimal form; used everywhere a double is printed so
// that identical runs produce byte-identical output.
std::string format_double(double v);

// Wire format {"K": ..., "b": ..., "taus": [...]}. Loading revalidates and
// recomputes every derived field; nothing derived is trusted from input.
nlohmann::json problem_to_json(const Problem& problem);
Problem problem_from_json(const nlohmann::json& j);

// Input block plus derived scalars, for reports.
nlohmann::json problem_summary_json(const Problem& problem);

// Fixed basis order (t_1, ntt_1, ..., t_t, ntt_t, u) as a plain array.
nlohmann::json reduced_state_to_json(const ReducedState& state);

const char* method_name(OptimizeMethod method);
nlohmann::json optimization_result_to_json(const OptimizationResult& result);

const char* regime_name(CancellationRegime regime);
nlohmann::json cancellation_residual_to_json(const CancellationResidual& residual);

nlohmann::json perturbation_report_to_json(const PerturbationReport& report);
// Columns: K,t,tau_bar,beta,eps_scale,variance,delta_alpha,delta_eta,
// predicted,measured,ratio.
std::string perturbation_report_csv_header();
std::string perturbation_report_csv_row(const PerturbationReport& report);

}  // namespace qps
