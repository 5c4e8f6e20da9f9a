#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>

#include "memilp/mps_io.hpp"
#include "memilp/solver.hpp"
#include "memilp/verify.hpp"

namespace memilp::cli {

namespace {

struct SolveArgs {
  std::string model_path;
  double time_limit = 300.0;
  std::size_t replicas = 1;
  std::uint64_t seed = 0;
  double dt = DynamicsParams{}.dt;
  double threshold = DynamicsParams{}.threshold;
  double tol = kDefaultFeasibilityTol;
  std::optional<double> lb;
  std::string trace;
  std::optional<std::uint64_t> steps;
  std::string out;
};

struct CheckArgs {
  std::string model_path;
  std::string sol_path;
  double tol = kDefaultFeasibilityTol;
  std::optional<double> lb;
};

struct OracleArgs {
  std::string model_path;
  std::size_t max_vars = kDefaultOracleMaxVars;
};

struct GapArgs {
  double best = 0.0;
  double lb = 0.0;
};

IlpModel load_model(const std::string& path) {
  IlpModel model = parse_mps(read_text_file(path));
  if (model.name().empty()) {
    return IlpModel(std::filesystem::path(path).stem().string(), model.var_names(), model.objective(),
                    model.eq_constraints(), model.ineq_constraints());
  }
  return model;
}

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const IlpModel model = load_model(a.model_path);

  SolverConfig config;
  config.time_limit_seconds = a.time_limit;
  config.n_replicas = a.replicas;
  config.base_seed = a.seed;
  config.feasibility_tol = a.tol;
  config.lower_bound = a.lb;
  config.max_steps = a.steps;
  if (!a.trace.empty()) config.trace_path = a.trace;
  DynamicsParams base;
  base.dt = a.dt;
  base.threshold = a.threshold;
  config.params_grid = default_params_grid(a.replicas, base);

  const SolveReport report =
      solve(model, config, [&](const ProgressEvent& e) { err << format_progress(e) << '\n'; });
  out << format_report(report);

  if (!report.best) return kNegative;
  const std::string sol_path =
      a.out.empty() ? std::filesystem::path(a.model_path).stem().string() + ".sol" : a.out;
  std::ofstream sol(sol_path, std::ios::binary);
  if (!sol) {
    err << "error: cannot write '" << sol_path << "'\n";
    return kInputError;
  }
  sol << write_sol(*report.best, model.var_names());
  out << std::left << std::setw(14) << "solution_file" << ": " << sol_path << '\n';
  return kSuccess;
}

int cmd_check(const CheckArgs& a, std::ostream& out) {
  const IlpModel model = load_model(a.model_path);
  const SolFile sol = parse_sol(read_text_file(a.sol_path));
  const SolutionVerdict verdict = check_solution_file(model, sol, a.tol);
  out << format_verdict(verdict, a.lb);
  return verdict.feasible ? kSuccess : kNegative;
}

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
  const IlpModel model = load_model(a.model_path);
  const OracleResult r = brute_force(model, a.max_vars);
  if (!r.optimum) {
    out << "infeasible\n";
    out << "enumerated: " << r.enumerated << '\n';
    return kNegative;
  }
  std::string bits;
  for (auto b : *r.arg_optimum) bits += b ? '1' : '0';
  out << "optimum: " << format_real(*r.optimum) << '\n';
  out << "assignment: " << bits << '\n';
  out << "feasible_count: " << r.feasible_count << '\n';
  out << "enumerated: " << r.enumerated << '\n';
  return kSuccess;
}

int cmd_gap(const GapArgs& a, std::ostream& out) {
  out << format_real(gap(a.best, a.lb)) << '\n';
  if (a.best < 0.0) out << "note: negative objective; gap uses |O_best| as denominator\n";
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anytime 0-1 ILP solver driven by self-organizing algebraic circuit dynamics", "memilp"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an MPS model and write the best solution as .sol");
  solve_cmd->add_option("model", solve_args.model_path, "MPS model file")->required();
  solve_cmd->add_option("--time-limit", solve_args.time_limit, "Wall-clock limit in seconds")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--replicas", solve_args.replicas, "Concurrent replicas")->check(CLI::Range(1, 1024));
  solve_cmd->add_option("--seed", solve_args.seed, "Base seed; replica k uses seed+k");
  solve_cmd->add_option("--dt", solve_args.dt, "Integration step")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--threshold", solve_args.threshold, "Readout voltage threshold");
  solve_cmd->add_option("--tol", solve_args.tol, "Feasibility tolerance")->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--lb", solve_args.lb, "External lower bound for the gap (default: trivial bound)");
  solve_cmd->add_option("--trace", solve_args.trace, "CSV trajectory trace path (default: none)");
  solve_cmd->add_option("--steps", solve_args.steps,
                        "Deterministic mode: steps per replica instead of a time limit (default: off)");
  solve_cmd->add_option("--out", solve_args.out, "Solution file (default: <model stem>.sol)");

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Verify a .sol file against an MPS model");
  check_cmd->add_option("model", check_args.model_path, "MPS model file")->required();
  check_cmd->add_option("solution", check_args.sol_path, ".sol file")->required();
  check_cmd->add_option("--tol", check_args.tol, "Feasibility tolerance")->check(CLI::NonNegativeNumber);
  check_cmd->add_option("--lb", check_args.lb, "Lower bound used to report a gap (default: none)");

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive optimum of a small model");
  oracle_cmd->add_option("model", oracle_args.model_path, "MPS model file")->required();
  oracle_cmd->add_option("--max-vars", oracle_args.max_vars, "Refuse models with more variables")
      ->check(CLI::Range(1, 40));

  GapArgs gap_args;
  auto* gap_cmd = app.add_subcommand("gap", "Print (best - lb) / |best|");
  gap_cmd->add_option("--best", gap_args.best, "Best objective found")->required();
  gap_cmd->add_option("--lb", gap_args.lb, "Lower bound")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_args, out, err);
    if (*check_cmd) return cmd_check(check_args, out);
    if (*oracle_cmd) return cmd_oracle(oracle_args, out);
    if (*gap_cmd) return cmd_gap(gap_args, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace memilp::cli
