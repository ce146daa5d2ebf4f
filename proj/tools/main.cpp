#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qps/cancellation.hpp"
#include "qps/full_sim.hpp"
#include "qps/optimizer.hpp"
#include "qps/perturbation.hpp"
#include "qps/problem.hpp"
#include "qps/reduced_sim.hpp"
#include "qps/serialize.hpp"

namespace {

using nlohmann::json;
using namespace qps;

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

struct CommonOptions {
  std::string format = "csv";
  std::string out_path = "-";
};

struct ProblemOptions {
  long long num_blocks = 0;
  long long block_size = 0;
  std::vector<long long> taus;
  std::string problem_json_path;
};

void add_common_flags(CLI::App* cmd, CommonOptions* opts) {
  cmd->add_option("--format", opts->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts->out_path,
                  "Output path, or - for standard output")
      ->capture_default_str();
}

void add_problem_flags(CLI::App* cmd, ProblemOptions* opts) {
  cmd->add_option("--K", opts->num_blocks, "Number of blocks");
  cmd->add_option("--b", opts->block_size, "Items per block");
  cmd->add_option("--taus", opts->taus,
                  "Comma-separated targets per marked block, e.g. 1,3")
      ->delimiter(',');
  cmd->add_option("--problem-json", opts->problem_json_path,
                  "Read the instance from a JSON file {\"K\":..,\"b\":..,\"taus\":[..]} "
                  "instead of flags");
}

Problem load_problem(const ProblemOptions& opts) {
  if (!opts.problem_json_path.empty()) {
    std::ifstream in(opts.problem_json_path);
    if (!in) throw InputError("cannot open " + opts.problem_json_path);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw InputError(std::string("invalid JSON: ") + e.what());
    }
    return problem_from_json(j);
  }
  if (opts.num_blocks == 0 || opts.block_size == 0 || opts.taus.empty()) {
    throw InputError("provide --K, --b and --taus (or --problem-json)");
  }
  return Problem::make(opts.num_blocks, opts.block_size, opts.taus);
}

void write_output(const CommonOptions& opts, const std::string& body) {
  if (opts.out_path == "-") {
    std::cout << body;
    std::cout.flush();
    return;
  }
  std::ofstream out(opts.out_path, std::ios::binary);
  if (!out) throw InputError("cannot open output path " + opts.out_path);
  out << body;
}

std::string csv_join(const std::vector<std::string>& fields) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) row += ',';
    row += fields[i];
  }
  return row;
}

std::string taus_field(const Problem& problem) {
  std::string s;
  for (std::size_t i = 0; i < problem.distribution().taus.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(problem.distribution().taus[i]);
  }
  return s;
}

std::string state_field(const ReducedState& state) {
  std::string s;
  for (Eigen::Index i = 0; i < state.amps.size(); ++i) {
    if (i) s += ';';
    s += format_double(state.amps[i]);
  }
  return s;
}

// Runs tasks 0..count-1 on a small pool and keeps results in input order,
// so the emitted rows do not depend on scheduling.
template <class Fn>
std::vector<std::string> ordered_rows(std::size_t count, int jobs, Fn&& fn) {
  std::vector<std::string> rows(count);
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) rows[i] = fn(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min<std::size_t>(jobs, count);
  std::vector<std::exception_ptr> errors(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= count) return;
          rows[i] = fn(i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
        next.store(count);
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return rows;
}

bool is_power_of_two(long long v) { return v > 0 && (v & (v - 1)) == 0; }

// ---------------------------------------------------------------------------
// validate

int cmd_validate(const CommonOptions& common, const ProblemOptions& popts) {
  const Problem problem = load_problem(popts);
  if (!is_power_of_two(problem.total_items())) {
    std::cerr << "warning: N = " << problem.total_items()
              << " is not a power of two; state preparation by Hadamard "
                 "gates would need padding\n";
  }
  if (common.format == "json") {
    write_output(common, problem_summary_json(problem).dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "K,b,taus,N,z,t,tau_bar,beta,variance\n";
    out << csv_join({std::to_string(problem.num_blocks()),
                     std::to_string(problem.block_size()), taus_field(problem),
                     std::to_string(problem.total_items()),
                     std::to_string(problem.total_targets()),
                     std::to_string(problem.marked_blocks()),
                     format_double(boost::rational_cast<double>(
                         problem.distribution().tau_bar)),
                     format_double(boost::rational_cast<double>(problem.beta())),
                     format_double(boost::rational_cast<double>(
                         problem.distribution().variance))})
        << "\n";
    write_output(common, out.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
  double j1 = 0.0;
  double j2 = 0.0;
  std::string mode = "auto";
  std::string engine = "reduced";
  double tol_discrepancy = 1e-10;
};

int cmd_simulate(const CommonOptions& common, const ProblemOptions& popts,
                 const SimulateOptions& sopts) {
  const Problem problem = load_problem(popts);

  std::string mode = sopts.mode;
  const bool integral = sopts.j1 == std::floor(sopts.j1) &&
                        sopts.j2 == std::floor(sopts.j2) && sopts.j1 >= 0 &&
                        sopts.j2 >= 0;
  if (mode == "auto") mode = integral ? "integer" : "real";
  if (mode == "integer" && !integral) {
    throw InputError("integer mode requires integral nonnegative j1, j2");
  }
  if (sopts.engine != "reduced" && mode != "integer") {
    throw InputError("engine '" + sopts.engine + "' simulates operators and "
                     "needs an integer schedule");
  }

  std::optional<ReducedState> reduced;
  std::optional<ReducedState> projected;
  if (sopts.engine == "reduced" || sopts.engine == "both") {
    ReducedState evolved =
        mode == "integer"
            ? evolve_operator(problem, static_cast<long long>(sopts.j1),
                              static_cast<long long>(sopts.j2))
            : evolve_analytic(problem, sopts.j1, sopts.j2);
    reduced = final_reflection(problem, evolved);
  }
  if (sopts.engine == "full" || sopts.engine == "both") {
    const FullState full =
        run_partial_search(problem, static_cast<long long>(sopts.j1),
                           static_cast<long long>(sopts.j2));
    projected = project_to_reduced(problem, full);
  }

  const ReducedState& final_state = reduced ? *reduced : *projected;
  const double success = success_probability(problem, final_state);
  const double residual = std::abs(final_state.unmarked_amp());
  const CancellationResidual cancel{
      residual_finite_b(problem, sopts.j1, sopts.j2),
      CancellationRegime::FiniteB};

  double discrepancy = std::numeric_limits<double>::quiet_NaN();
  if (reduced && projected) {
    discrepancy = (reduced->amps - projected->amps).cwiseAbs().maxCoeff();
  }

  if (common.format == "json") {
    json j;
    j["problem"] = problem_summary_json(problem);
    j["j1"] = sopts.j1;
    j["j2"] = sopts.j2;
    j["mode"] = mode;
    j["engine"] = sopts.engine;
    j["state"] = reduced_state_to_json(final_state);
    j["success_probability"] = success;
    j["nontarget_residual"] = residual;
    j["cancellation_residual"] = cancel.value;
    j["cancellation_regime"] = regime_name(cancel.regime);
    j["max_discrepancy"] =
        std::isnan(discrepancy) ? json(nullptr) : json(discrepancy);
    write_output(common, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "K,b,taus,j1,j2,mode,engine,success_probability,nontarget_residual,"
           "cancellation_residual,max_discrepancy,state\n";
    out << csv_join({std::to_string(problem.num_blocks()),
                     std::to_string(problem.block_size()), taus_field(problem),
                     format_double(sopts.j1), format_double(sopts.j2), mode,
                     sopts.engine, format_double(success),
                     format_double(residual), format_double(cancel.value),
                     format_double(discrepancy), state_field(final_state)})
        << "\n";
    write_output(common, out.str());
  }

  if (reduced && projected && !(discrepancy <= sopts.tol_discrepancy)) {
    std::cerr << "assertion failed: engine discrepancy " << discrepancy
              << " exceeds " << sopts.tol_discrepancy << "\n";
    return kExitAssertion;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// optimize

struct OptimizeOptions {
  std::string oracle;
  long long grid_points = 20000;
};

int cmd_optimize(const CommonOptions& common, const ProblemOptions& popts,
                 const OptimizeOptions& oopts) {
  const Problem problem = load_problem(popts);
  const bool even = problem.distribution().variance == Rational(0);

  const OptimizationResult solved = solve_uneven_optimum(problem);
  std::optional<OptimizationResult> closed;
  if (even) closed = even_optimum(problem);
  std::optional<OptimizationResult> grid;
  if (oopts.oracle == "grid") grid = grid_oracle(problem, oopts.grid_points);

  const double grid_gap =
      grid ? std::abs(grid->f_star - solved.f_star)
           : std::numeric_limits<double>::quiet_NaN();

  if (common.format == "json") {
    json j;
    j["problem"] = problem_summary_json(problem);
    j["result"] = optimization_result_to_json(solved);
    j["closed_form_even"] =
        closed ? optimization_result_to_json(*closed) : json(nullptr);
    j["grid_oracle"] = grid ? optimization_result_to_json(*grid) : json(nullptr);
    j["grid_gap"] = grid ? json(grid_gap) : json(nullptr);
    write_output(common, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "K,b,taus,method,alpha_star,eta_star,f_star,queries_leading,"
           "sign_change_intervals,even_alpha0,even_eta0,grid_f_star,grid_gap\n";
    out << csv_join(
               {std::to_string(problem.num_blocks()),
                std::to_string(problem.block_size()), taus_field(problem),
                method_name(solved.method), format_double(solved.alpha_star),
                format_double(solved.eta_star), format_double(solved.f_star),
                format_double(solved.queries_leading),
                std::to_string(solved.sign_change_intervals),
                closed ? format_double(closed->alpha_star) : "",
                closed ? format_double(closed->eta_star) : "",
                grid ? format_double(grid->f_star) : "",
                grid ? format_double(grid_gap) : ""})
        << "\n";
    write_output(common, out.str());
  }

  if (closed && (std::abs(closed->alpha_star - solved.alpha_star) > 1e-10 ||
                 std::abs(closed->eta_star - solved.eta_star) > 1e-10)) {
    std::cerr << "assertion failed: closed-form and condition-root optima "
                 "disagree beyond 1e-10\n";
    return kExitAssertion;
  }
  if (grid && !(grid_gap < 1e-6)) {
    std::cerr << "assertion failed: grid oracle gap " << grid_gap
              << " exceeds 1e-6\n";
    return kExitAssertion;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep-beta

struct SweepOptions {
  int points = 151;
  int jobs = 1;
};

int cmd_sweep_beta(const CommonOptions& common, const SweepOptions& sopts) {
  if (sopts.points < 2) throw InputError("--points must be at least 2");
  const double bc = beta_critical();

  struct Row {
    double beta;
    double g;
    int critical;
  };
  std::vector<Row> rows;
  rows.reserve(sopts.points + 1);
  for (int i = 0; i < sopts.points; ++i) {
    const double beta = 0.75 * static_cast<double>(i) /
                        static_cast<double>(sopts.points);
    rows.push_back({beta, penalty_bound_coefficient(beta), 0});
  }
  // Marker row at the recomputed critical point, kept in grid order.
  const auto pos = std::lower_bound(
      rows.begin(), rows.end(), bc,
      [](const Row& r, double v) { return r.beta < v; });
  rows.insert(pos, {bc, penalty_bound_coefficient(bc), 1});

  const auto row_text = ordered_rows(rows.size(), sopts.jobs, [&](std::size_t i) {
    return csv_join({format_double(rows[i].beta), format_double(rows[i].g),
                     std::to_string(rows[i].critical)});
  });

  if (common.format == "json") {
    json arr = json::array();
    for (const Row& r : rows) {
      arr.push_back({{"beta", r.beta}, {"g_beta", r.g}, {"critical", r.critical != 0}});
    }
    write_output(common, json{{"beta_critical", bc}, {"rows", arr}}.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "beta,g_beta,critical\n";
    for (const auto& r : row_text) out << r << "\n";
    write_output(common, out.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// perturb-check

struct PerturbOptions {
  std::vector<double> eps_scales{0.1, 0.05};
  std::vector<double> betas{0.05, 0.1, 0.2};
  double tau_bar = 4.0;
  std::vector<double> pattern{1.0, -1.0};
  bool no_assert = false;
  bool large_k = false;
  int jobs = 1;
};

int cmd_perturb_check(const CommonOptions& common, const PerturbOptions& popts) {
  if (popts.eps_scales.empty()) throw InputError("--eps must be nonempty");
  for (double e : popts.eps_scales) {
    if (!(e > 0.0 && e < 1.0)) throw InputError("eps scales must be in (0, 1)");
  }

  struct Task {
    double beta;  // 0 on the many-blocks path
    double eps;
  };
  std::vector<Task> tasks;
  if (popts.large_k) {
    for (double eps : popts.eps_scales) tasks.push_back({0.0, eps});
  } else {
    if (popts.betas.empty()) throw InputError("--betas must be nonempty");
    for (double beta : popts.betas) {
      for (double eps : popts.eps_scales) tasks.push_back({beta, eps});
    }
  }

  // Reference shape: epsilon pattern scaled to a valid profile; the report
  // rescales it to each requested epsilon.
  double max_abs = 0.0;
  for (double e : popts.pattern) max_abs = std::max(max_abs, std::abs(e));
  if (max_abs == 0.0) throw InputError("--pattern must not be identically zero");

  const double t = static_cast<double>(popts.pattern.size());
  std::vector<PerturbationReport> reports(tasks.size());
  const auto rows = ordered_rows(tasks.size(), popts.jobs, [&](std::size_t i) {
    const Task& task = tasks[i];
    if (popts.large_k) {
      reports[i] = large_k_penalty_report(popts.tau_bar, popts.pattern, task.eps);
    } else {
      std::vector<double> taus;
      taus.reserve(popts.pattern.size());
      for (double e : popts.pattern) {
        taus.push_back(popts.tau_bar * (1.0 + 0.5 * e / max_abs));
      }
      const BlockProfile shape =
          BlockProfile::analysis(t / task.beta, std::move(taus));
      reports[i] = uneven_penalty_report(shape, task.eps, !popts.no_assert);
    }
    return perturbation_report_csv_row(reports[i]);
  });

  if (common.format == "json") {
    json arr = json::array();
    for (const auto& rep : reports) arr.push_back(perturbation_report_to_json(rep));
    write_output(common, json{{"rows", arr}}.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << perturbation_report_csv_header() << "\n";
    for (const auto& r : rows) out << r << "\n";
    write_output(common, out.str());
  }

  int failures = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (reports[i].inequality_checked && !reports[i].inequality_holds) {
      std::cerr << "assertion failed: penalty inequality at beta = "
                << format_double(tasks[i].beta)
                << ", eps = " << format_double(tasks[i].eps) << "\n";
      ++failures;
    }
  }
  return failures == 0 ? kExitOk : kExitAssertion;
}

// ---------------------------------------------------------------------------
// oracle-compare

struct OracleOptions {
  long long max_j1 = 8;
  long long max_j2 = 8;
  double tol = 1e-10;
  bool shuffle_targets = false;
  unsigned seed = 12345;
  int jobs = 1;
};

int cmd_oracle_compare(const CommonOptions& common, const ProblemOptions& popts,
                       const OracleOptions& oopts) {
  const Problem problem = load_problem(popts);
  if (oopts.max_j1 < 0 || oopts.max_j2 < 0) {
    throw InputError("--max-j1/--max-j2 must be nonnegative");
  }

  std::vector<std::vector<long long>> slots;
  if (oopts.shuffle_targets) {
    std::mt19937 rng(oopts.seed);
    std::vector<long long> all(problem.block_size());
    std::iota(all.begin(), all.end(), 0);
    for (int i = 0; i < problem.marked_blocks(); ++i) {
      std::shuffle(all.begin(), all.end(), rng);
      slots.emplace_back(all.begin(),
                         all.begin() + problem.distribution().taus[i]);
    }
  }

  const std::size_t n1 = static_cast<std::size_t>(oopts.max_j1) + 1;
  const std::size_t n2 = static_cast<std::size_t>(oopts.max_j2) + 1;
  std::vector<double> discrepancies(n1 * n2);
  const auto rows = ordered_rows(n1 * n2, oopts.jobs, [&](std::size_t i) {
    const long long j1 = static_cast<long long>(i / n2);
    const long long j2 = static_cast<long long>(i % n2);
    const FullState full =
        oopts.shuffle_targets
            ? run_partial_search(problem, j1, j2, slots)
            : run_partial_search(problem, j1, j2);
    const ReducedState projected = project_to_reduced(problem, full);
    const ReducedState reduced =
        final_reflection(problem, evolve_operator(problem, j1, j2));
    const double d = (projected.amps - reduced.amps).cwiseAbs().maxCoeff();
    discrepancies[i] = d;
    return csv_join({std::to_string(j1), std::to_string(j2), format_double(d)});
  });

  const double worst =
      *std::max_element(discrepancies.begin(), discrepancies.end());

  if (common.format == "json") {
    json arr = json::array();
    std::size_t i = 0;
    for (std::size_t a = 0; a < n1; ++a) {
      for (std::size_t b = 0; b < n2; ++b, ++i) {
        arr.push_back({{"j1", a}, {"j2", b}, {"max_coord_discrepancy", discrepancies[i]}});
      }
    }
    write_output(common,
                 json{{"problem", problem_summary_json(problem)},
                      {"worst_discrepancy", worst},
                      {"rows", arr}}
                         .dump(2) +
                     "\n");
  } else {
    std::ostringstream out;
    out << "j1,j2,max_coord_discrepancy\n";
    for (const auto& r : rows) out << r << "\n";
    write_output(common, out.str());
  }

  if (!(worst <= oopts.tol)) {
    std::cerr << "assertion failed: worst discrepancy " << worst << " exceeds "
              << oopts.tol << "\n";
    return kExitAssertion;
  }
  return kExitOk;
}

void emit_error(const char* type, const std::string& message) {
  std::cerr << json{{"error", {{"type", type}, {"message", message}}}}.dump()
            << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qpslab: exact laboratory for quantum partial search over blocked "
      "databases with unevenly distributed targets"};
  app.require_subcommand(1);

  CommonOptions common;
  ProblemOptions popts;
  SimulateOptions sim;
  OptimizeOptions opt;
  SweepOptions sweep;
  PerturbOptions perturb;
  OracleOptions oracle;

  auto* validate = app.add_subcommand(
      "validate", "Validate an instance and print derived quantities. "
                  "CSV columns: K,b,taus,N,z,t,tau_bar,beta,variance");
  add_common_flags(validate, &common);
  add_problem_flags(validate, &popts);

  auto* simulate = app.add_subcommand(
      "simulate",
      "Run the partial search pipeline and report the reduced final state. "
      "CSV columns: K,b,taus,j1,j2,mode,engine,success_probability,"
      "nontarget_residual,cancellation_residual,max_discrepancy,state "
      "(state joins the 2t+1 reduced amplitudes with ';')");
  add_common_flags(simulate, &common);
  add_problem_flags(simulate, &popts);
  simulate->add_option("--j1", sim.j1, "Global iterations")->required();
  simulate->add_option("--j2", sim.j2, "Local iterations")->required();
  simulate->add_option("--mode", sim.mode, "Schedule mode")
      ->check(CLI::IsMember({"auto", "integer", "real"}))
      ->capture_default_str();
  simulate->add_option("--engine", sim.engine, "Simulation engine")
      ->check(CLI::IsMember({"reduced", "full", "both"}))
      ->capture_default_str();
  simulate
      ->add_option("--tol-discrepancy", sim.tol_discrepancy,
                   "Cross-engine agreement tolerance (engine=both)")
      ->capture_default_str();

  auto* optimize = app.add_subcommand(
      "optimize",
      "Solve the large-block query optimum. CSV columns: K,b,taus,method,"
      "alpha_star,eta_star,f_star,queries_leading,sign_change_intervals,"
      "even_alpha0,even_eta0,grid_f_star,grid_gap");
  add_common_flags(optimize, &common);
  add_problem_flags(optimize, &popts);
  optimize->add_option("--oracle", opt.oracle, "Independent check: 'grid'")
      ->check(CLI::IsMember({"grid"}));
  optimize->add_option("--grid-points", opt.grid_points, "Grid oracle resolution")
      ->capture_default_str();

  auto* sweep_cmd = app.add_subcommand(
      "sweep-beta",
      "Tabulate the penalty bound coefficient over beta in (0, 0.75) plus a "
      "marker row at the recomputed critical beta. CSV columns: "
      "beta,g_beta,critical");
  add_common_flags(sweep_cmd, &common);
  sweep_cmd->add_option("--points", sweep.points, "Grid points")
      ->capture_default_str();
  sweep_cmd->add_option("--jobs", sweep.jobs, "Worker threads")
      ->capture_default_str();

  auto* perturb_cmd = app.add_subcommand(
      "perturb-check",
      "Compare measured second-order penalties against the closed-form "
      "bound over a (beta, eps) grid. CSV columns: K,t,tau_bar,beta,"
      "eps_scale,variance,delta_alpha,delta_eta,predicted,measured,ratio. "
      "Exit 1 when an asserted inequality fails.");
  add_common_flags(perturb_cmd, &common);
  perturb_cmd->add_option("--eps", perturb.eps_scales, "Epsilon scales")
      ->delimiter(',')
      ->capture_default_str();
  perturb_cmd->add_option("--betas", perturb.betas, "Marked-block fractions")
      ->delimiter(',')
      ->capture_default_str();
  perturb_cmd->add_option("--tau-bar", perturb.tau_bar, "Mean targets per block")
      ->capture_default_str();
  perturb_cmd
      ->add_option("--pattern", perturb.pattern,
                   "Epsilon shape (rescaled to each eps; must sum to zero)")
      ->delimiter(',')
      ->capture_default_str();
  perturb_cmd->add_flag("--no-assert", perturb.no_assert,
                        "Report without asserting the inequality");
  perturb_cmd->add_flag("--large-k", perturb.large_k,
                        "Use the many-blocks path (betas ignored, K = inf)");
  perturb_cmd->add_option("--jobs", perturb.jobs, "Worker threads")
      ->capture_default_str();

  auto* oracle_cmd = app.add_subcommand(
      "oracle-compare",
      "Batch-compare the full statevector oracle against the reduced "
      "simulator over all integer schedules up to --max-j1/--max-j2. "
      "CSV columns: j1,j2,max_coord_discrepancy. Exit 1 when any "
      "discrepancy exceeds --tol-discrepancy.");
  add_common_flags(oracle_cmd, &common);
  add_problem_flags(oracle_cmd, &popts);
  oracle_cmd->add_option("--max-j1", oracle.max_j1, "Largest global count")
      ->capture_default_str();
  oracle_cmd->add_option("--max-j2", oracle.max_j2, "Largest local count")
      ->capture_default_str();
  oracle_cmd
      ->add_option("--tol-discrepancy", oracle.tol,
                   "Per-coordinate agreement tolerance")
      ->capture_default_str();
  oracle_cmd->add_flag("--shuffle-targets", oracle.shuffle_targets,
                       "Randomize within-block target placement");
  oracle_cmd->add_option("--seed", oracle.seed, "Placement shuffle seed")
      ->capture_default_str();
  oracle_cmd->add_option("--jobs", oracle.jobs, "Worker threads")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints usage; 0 for --help/--version
    if (code == 0) return kExitOk;
    emit_error("input", e.what());
    return kExitInput;
  }

  try {
    if (validate->parsed()) return cmd_validate(common, popts);
    if (simulate->parsed()) return cmd_simulate(common, popts, sim);
    if (optimize->parsed()) return cmd_optimize(common, popts, opt);
    if (sweep_cmd->parsed()) return cmd_sweep_beta(common, sweep);
    if (perturb_cmd->parsed()) return cmd_perturb_check(common, perturb);
    if (oracle_cmd->parsed()) return cmd_oracle_compare(common, popts, oracle);
  } catch (const RegimeError& e) {
    emit_error("regime", e.what());
    return kExitInput;
  } catch (const InputError& e) {
    emit_error("input", e.what());
    return kExitInput;
  } catch (const ResourceError& e) {
    emit_error("resource", e.what());
    return kExitResource;
  } catch (const SolveError& e) {
    emit_error("solve", e.what());
    return kExitAssertion;
  } catch (const InvariantError& e) {
    emit_error("invariant", e.what());
    return kExitAssertion;
  }
  return kExitInput;
}
