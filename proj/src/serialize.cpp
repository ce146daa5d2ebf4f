#include "qps/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace qps {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json problem_to_json(const Problem& problem) {
  return json{{"K", problem.num_blocks()},
              {"b", problem.block_size()},
              {"taus", problem.distribution().taus}};
}

Problem problem_from_json(const json& j) {
  if (!j.is_object() || !j.contains("K") || !j.contains("b") || !j.contains("taus")) {
    throw InputError("problem JSON must be an object with K, b and taus");
  }
  try {
    return Problem::make(j.at("K").get<long long>(), j.at("b").get<long long>(),
                         j.at("taus").get<std::vector<long long>>());
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed problem JSON: ") + e.what());
  }
}

json problem_summary_json(const Problem& problem) {
  json j = problem_to_json(problem);
  j["N"] = problem.total_items();
  j["z"] = problem.total_targets();
  j["t"] = problem.marked_blocks();
  j["tau_bar"] = boost::rational_cast<double>(problem.distribution().tau_bar);
  j["beta"] = boost::rational_cast<double>(problem.beta());
  j["variance"] = boost::rational_cast<double>(problem.distribution().variance);
  return j;
}

json reduced_state_to_json(const ReducedState& state) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < state.amps.size(); ++i) arr.push_back(state.amps[i]);
  return arr;
}

const char* regime_name(CancellationRegime regime) {
  switch (regime) {
    case CancellationRegime::FiniteB: return "finite-b";
    case CancellationRegime::LargeB: return "large-b";
    case CancellationRegime::LargeK: return "large-k";
  }
  return "unknown";
}

json cancellation_residual_to_json(const CancellationResidual& residual) {
  return json{{"value", residual.value},
              {"regime", regime_name(residual.regime)}};
}

const char* method_name(OptimizeMethod method) {
  switch (method) {
    case OptimizeMethod::ClosedFormEven: return "closed-form-even";
    case OptimizeMethod::ConditionRoot: return "condition-root";
    case OptimizeMethod::GridOracle: return "grid-oracle";
  }
  return "unknown";
}

json optimization_result_to_json(const OptimizationResult& result) {
  json j{{"alpha_star", result.alpha_star},
         {"eta_star", result.eta_star},
         {"f_star", result.f_star},
         {"method", method_name(result.method)}};
  if (std::isnan(result.queries_leading)) {
    j["queries_leading"] = nullptr;
  } else {
    j["queries_leading"] = result.queries_leading;
  }
  if (result.method == OptimizeMethod::ConditionRoot) {
    j["sign_change_intervals"] = result.sign_change_intervals;
    j["bracket_roots"] = result.bracket_roots;
  }
  return j;
}

json perturbation_report_to_json(const PerturbationReport& report) {
  json j;
  if (std::isinf(report.num_blocks)) {
    j["K"] = nullptr;  // many-blocks limit
  } else {
    j["K"] = report.num_blocks;
  }
  j["t"] = report.marked_blocks;
  j["tau_bar"] = report.tau_bar;
  j["beta"] = report.beta;
  j["eps_scale"] = report.epsilon_scale;
  j["variance"] = report.variance;
  j["delta_alpha"] = report.delta_alpha;
  j["delta_eta"] = report.delta_eta;
  j["predicted"] = report.predicted_penalty;
  j["measured"] = report.measured_penalty;
  j["ratio"] = std::isnan(report.ratio) ? json(nullptr) : json(report.ratio);
  j["degenerate"] = report.degenerate;
  j["inequality_checked"] = report.inequality_checked;
  j["inequality_holds"] = report.inequality_holds;
  return j;
}

std::string perturbation_report_csv_header() {
  return "K,t,tau_bar,beta,eps_scale,variance,delta_alpha,delta_eta,"
         "predicted,measured,ratio";
}

std::string perturbation_report_csv_row(const PerturbationReport& report) {
  std::string row;
  row += format_double(report.num_blocks);
  row += ',';
  row += std::to_string(report.marked_blocks);
  for (double v : {report.tau_bar, report.beta, report.epsilon_scale,
                   report.variance, report.delta_alpha, report.delta_eta,
                   report.predicted_penalty, report.measured_penalty,
                   report.ratio}) {
    row += ',';
    row += format_double(v);
  }
  return row;
}

}  // namespace qps
