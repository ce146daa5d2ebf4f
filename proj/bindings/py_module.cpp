#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qps/cancellation.hpp"
#include "qps/full_sim.hpp"
#include "qps/optimizer.hpp"
#include "qps/perturbation.hpp"
#include "qps/problem.hpp"
#include "qps/reduced_sim.hpp"
#include "qps/serialize.hpp"

namespace py = pybind11;
using namespace qps;

namespace {

ReducedState state_from_array(const Problem& problem,
                              const Eigen::VectorXd& amps) {
  if (amps.size() != 2 * problem.marked_blocks() + 1) {
    throw InputError("state length must be 2t+1 in the fixed basis order");
  }
  return ReducedState{amps};
}

py::array_t<double> amps_array(const FullState& state) {
  return py::array_t<double>(static_cast<py::ssize_t>(state.amps.size()),
                             state.amps.data());
}

py::array_t<bool> target_mask_array(const FullState& state) {
  py::array_t<bool> out(static_cast<py::ssize_t>(state.is_target.size()));
  auto view = out.mutable_unchecked<1>();
  for (py::ssize_t i = 0; i < view.shape(0); ++i) {
    view(i) = state.is_target[static_cast<std::size_t>(i)] != 0;
  }
  return out;
}

const char* schedule_mode_name(ScheduleMode mode) {
  return mode == ScheduleMode::IntegerOperator ? "integer" : "real";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Exact laboratory for quantum partial search over a blocked database "
      "with unevenly distributed target items: reduced and full-statevector "
      "simulators, cancellation and optimization solvers, and the "
      "second-order perturbation analysis.";

  // Exception mapping. Derived types are registered after their bases so
  // that their translators run first.
  auto input_error = py::register_exception<InputError>(m, "InputError",
                                                        PyExc_ValueError);
  py::register_exception<RegimeError>(m, "RegimeError", input_error.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<SolveError>(m, "SolveError", PyExc_RuntimeError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

  py::class_<BlockProfile>(m, "BlockProfile",
                           "Real-valued block structure used by the "
                           "large-block analytics; supports relaxed "
                           "analysis-mode instances with beta < 3/4.")
      .def_static("analysis", &BlockProfile::analysis, py::arg("num_blocks"),
                  py::arg("taus"))
      .def_property_readonly("num_blocks", &BlockProfile::num_blocks)
      .def_property_readonly("taus", &BlockProfile::taus)
      .def_property_readonly("marked_blocks", &BlockProfile::marked_blocks)
      .def_property_readonly("total_targets", &BlockProfile::total_targets)
      .def_property_readonly("tau_bar", &BlockProfile::tau_bar)
      .def_property_readonly("beta", &BlockProfile::beta)
      .def_property_readonly("variance", &BlockProfile::variance)
      .def_property_readonly("epsilons", &BlockProfile::epsilons)
      .def_property_readonly("max_abs_epsilon", &BlockProfile::max_abs_epsilon)
      .def_property_readonly("strict_regime", &BlockProfile::strict_regime)
      .def("evened", &BlockProfile::evened)
      .def("rescaled", &BlockProfile::rescaled, py::arg("scale"));

  py::class_<Problem>(m, "Problem",
                      "Validated algorithm-mode instance (N = b*K items, "
                      "integer targets per marked block, t < K/4).")
      .def_static(
          "make",
          [](long long k, long long b, std::vector<long long> taus) {
            return Problem::make(k, b, std::move(taus));
          },
          py::arg("num_blocks"), py::arg("block_size"), py::arg("taus"))
      .def_property_readonly("total_items", &Problem::total_items)
      .def_property_readonly("num_blocks", &Problem::num_blocks)
      .def_property_readonly("block_size", &Problem::block_size)
      .def_property_readonly("total_targets", &Problem::total_targets)
      .def_property_readonly("marked_blocks", &Problem::marked_blocks)
      .def_property_readonly(
          "taus", [](const Problem& p) { return p.distribution().taus; })
      .def_property_readonly(
          "tau_bar",
          [](const Problem& p) {
            return boost::rational_cast<double>(p.distribution().tau_bar);
          })
      .def_property_readonly(
          "beta",
          [](const Problem& p) { return boost::rational_cast<double>(p.beta()); })
      .def_property_readonly(
          "variance",
          [](const Problem& p) {
            return boost::rational_cast<double>(p.distribution().variance);
          })
      .def_property_readonly(
          "epsilons",
          [](const Problem& p) {
            std::vector<double> eps;
            for (const auto& e : p.distribution().epsilons) {
              eps.push_back(boost::rational_cast<double>(e));
            }
            return eps;
          })
      .def("angles",
           [](const Problem& p) {
             const RotationAngles a = p.angles();
             return py::make_tuple(a.theta, a.thetas);
           },
           "Returns (theta, [theta_i...]) with sin^2 theta = z/N and "
           "sin^2 theta_i = tau_i/b.")
      .def("profile", &Problem::profile)
      .def("to_json", [](const Problem& p) { return problem_to_json(p).dump(); })
      .def_static("from_json", [](const std::string& text) {
        return problem_from_json(nlohmann::json::parse(text, nullptr, true));
      });

  py::class_<Schedule>(m, "Schedule")
      .def_static("integer_ops", &Schedule::integer_ops, py::arg("j1"),
                  py::arg("j2"))
      .def_static("analytic", &Schedule::analytic, py::arg("j1"), py::arg("j2"))
      .def_static("from_eta_alpha", &Schedule::from_eta_alpha,
                  py::arg("problem"), py::arg("eta"), py::arg("alpha"))
      .def_readonly("j1", &Schedule::j1)
      .def_readonly("j2", &Schedule::j2)
      .def_property_readonly(
          "mode", [](const Schedule& s) { return schedule_mode_name(s.mode); });

  m.def("make_problem",
        [](long long k, long long b, std::vector<long long> taus) {
          return Problem::make(k, b, std::move(taus));
        },
        py::arg("num_blocks"), py::arg("block_size"), py::arg("taus"));

  // Reduced-space simulator; states are plain numpy vectors in the fixed
  // basis order (t_1, ntt_1, ..., t_t, ntt_t, u).
  m.def("initial_state",
        [](const Problem& p) { return initial_state(p).amps; }, py::arg("problem"));
  m.def("g1_matrix", &g1_matrix, py::arg("problem"));
  m.def("g2_matrix", &g2_matrix, py::arg("problem"), py::arg("j2"));
  m.def("evolve_operator",
        [](const Problem& p, long long j1, long long j2) {
          return evolve_operator(p, j1, j2).amps;
        },
        py::arg("problem"), py::arg("j1"), py::arg("j2"));
  m.def("evolve_analytic",
        [](const Problem& p, double j1, double j2) {
          return evolve_analytic(p, j1, j2).amps;
        },
        py::arg("problem"), py::arg("j1"), py::arg("j2"));
  m.def("final_reflection",
        [](const Problem& p, const Eigen::VectorXd& amps) {
          return final_reflection(p, state_from_array(p, amps)).amps;
        },
        py::arg("problem"), py::arg("state"));
  m.def("success_probability",
        [](const Problem& p, const Eigen::VectorXd& amps) {
          return success_probability(p, state_from_array(p, amps));
        },
        py::arg("problem"), py::arg("state"));

  py::class_<FullState>(m, "FullState",
                        "Dense statevector over all N items, block-major.")
      .def_property_readonly("amps", &amps_array)
      .def_property_readonly("is_target", &target_mask_array)
      .def_readonly("block_size", &FullState::block_size);

  m.def("uniform_state",
        [](const Problem& p) { return uniform_state(p); }, py::arg("problem"));
  m.def("run_partial_search",
        [](const Problem& p, long long j1, long long j2,
           const std::optional<std::vector<std::vector<long long>>>& slots,
           long long cap) {
          return slots ? run_partial_search(p, j1, j2, *slots, cap)
                       : run_partial_search(p, j1, j2, cap);
        },
        py::arg("problem"), py::arg("j1"), py::arg("j2"),
        py::arg("target_slots") = py::none(),
        py::arg("cap") = kDefaultFullSimCap);
  m.def("project_to_reduced",
        [](const Problem& p, const FullState& s, double tol) {
          return project_to_reduced(p, s, tol).amps;
        },
        py::arg("problem"), py::arg("state"), py::arg("class_tol") = 1e-9);
  m.def("success_probability",
        [](const Problem& p, const FullState& s) {
          return success_probability(p, s);
        },
        py::arg("problem"), py::arg("state"));

  // Cancellation constraint.
  m.def("residual_finite_b", &residual_finite_b, py::arg("problem"),
        py::arg("j1"), py::arg("j2"));
  m.def("solve_j1_finite_b", &solve_j1_finite_b, py::arg("problem"),
        py::arg("j2"));
  m.def("eta_large_b",
        py::overload_cast<const BlockProfile&, double>(&eta_large_b),
        py::arg("profile"), py::arg("alpha"));
  m.def("eta_large_b", py::overload_cast<const Problem&, double>(&eta_large_b),
        py::arg("problem"), py::arg("alpha"));
  m.def("eta_large_k", &eta_large_k, py::arg("profile"), py::arg("alpha"));

  // Optimizer.
  py::class_<OptimizationResult>(m, "OptimizationResult")
      .def_readonly("alpha_star", &OptimizationResult::alpha_star)
      .def_readonly("eta_star", &OptimizationResult::eta_star)
      .def_readonly("f_star", &OptimizationResult::f_star)
      .def_readonly("queries_leading", &OptimizationResult::queries_leading)
      .def_property_readonly(
          "method",
          [](const OptimizationResult& r) { return method_name(r.method); })
      .def_readonly("sign_change_intervals",
                    &OptimizationResult::sign_change_intervals)
      .def_readonly("bracket_roots", &OptimizationResult::bracket_roots)
      .def("to_json", [](const OptimizationResult& r) {
        return optimization_result_to_json(r).dump();
      });

  m.def("optimality_residual",
        py::overload_cast<const BlockProfile&, double>(&optimality_residual),
        py::arg("profile"), py::arg("alpha"));
  m.def("optimality_residual",
        py::overload_cast<const Problem&, double>(&optimality_residual),
        py::arg("problem"), py::arg("alpha"));
  m.def("even_optimum", py::overload_cast<const BlockProfile&>(&even_optimum),
        py::arg("profile"));
  m.def("even_optimum", py::overload_cast<const Problem&>(&even_optimum),
        py::arg("problem"));
  m.def("solve_uneven_optimum",
        py::overload_cast<const BlockProfile&>(&solve_uneven_optimum),
        py::arg("profile"));
  m.def("solve_uneven_optimum",
        py::overload_cast<const Problem&>(&solve_uneven_optimum),
        py::arg("problem"));
  m.def("grid_oracle",
        py::overload_cast<const BlockProfile&, long long>(&grid_oracle),
        py::arg("profile"), py::arg("grid_points"));
  m.def("grid_oracle", py::overload_cast<const Problem&, long long>(&grid_oracle),
        py::arg("problem"), py::arg("grid_points"));
  m.def("total_queries", &total_queries, py::arg("problem"), py::arg("eta"),
        py::arg("alpha"));

  // Perturbation analysis.
  py::class_<PerturbationReport>(m, "PerturbationReport")
      .def_readonly("num_blocks", &PerturbationReport::num_blocks)
      .def_readonly("marked_blocks", &PerturbationReport::marked_blocks)
      .def_readonly("tau_bar", &PerturbationReport::tau_bar)
      .def_readonly("beta", &PerturbationReport::beta)
      .def_readonly("epsilon_scale", &PerturbationReport::epsilon_scale)
      .def_readonly("variance", &PerturbationReport::variance)
      .def_readonly("delta_alpha", &PerturbationReport::delta_alpha)
      .def_readonly("delta_eta", &PerturbationReport::delta_eta)
      .def_readonly("predicted_penalty", &PerturbationReport::predicted_penalty)
      .def_readonly("measured_penalty", &PerturbationReport::measured_penalty)
      .def_readonly("ratio", &PerturbationReport::ratio)
      .def_readonly("degenerate", &PerturbationReport::degenerate)
      .def_readonly("inequality_checked", &PerturbationReport::inequality_checked)
      .def_readonly("inequality_holds", &PerturbationReport::inequality_holds)
      .def("csv_row",
           [](const PerturbationReport& r) {
             return perturbation_report_csv_row(r);
           })
      .def("to_json", [](const PerturbationReport& r) {
        return perturbation_report_to_json(r).dump();
      });

  m.attr("PERTURBATION_CSV_HEADER") = perturbation_report_csv_header();

  m.def("large_k_penalty_constant", &large_k_penalty_constant);
  m.def("large_k_penalty_prediction", &large_k_penalty_prediction,
        py::arg("tau_bar"), py::arg("variance"));
  m.def("delta_alpha", &delta_alpha, py::arg("profile"));
  m.def("delta_eta", &delta_eta, py::arg("profile"));
  m.def("sin_sum_second_order", &sin_sum_second_order, py::arg("profile"));
  m.def("cos_sum_second_order", &cos_sum_second_order, py::arg("profile"));
  m.def("penalty_bound_coefficient", &penalty_bound_coefficient, py::arg("beta"));
  m.def("beta_critical", &beta_critical);
  m.def("uneven_penalty_report", &uneven_penalty_report, py::arg("profile"),
        py::arg("epsilon_scale"), py::arg("assert_inequality") = true);
  m.def("large_k_penalty_report", &large_k_penalty_report, py::arg("tau_bar"),
        py::arg("pattern"), py::arg("epsilon_scale"));

#ifdef QPSLAB_VERSION
  m.attr("__version__") = QPSLAB_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
