#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "memilp/dynamics.hpp"
#include "memilp/model.hpp"
#include "memilp/soac.hpp"

namespace memilp {

/// How far below the incumbent the objective gate is placed. Unset fields are
/// derived from the objective: integral is true when every f_j is an integer,
/// eps_abs defaults to 1e-6 * ||f||_1.
struct TightenRule {
  std::optional<double> eps_abs;
  double eps_rel = 0.0;
  std::optional<bool> integral;
};

/// O_best - 1 for integral objectives, otherwise O_best - max(eps_abs, eps_rel |O_best|).
/// Always strictly below O_best.
double tighten_bound(double best, std::span<const double> f, const TightenRule& rule = {});

struct SolverConfig {
  double time_limit_seconds = 300.0;
  /// Step-limited deterministic mode: when set, each replica runs exactly this
  /// many steps (unless the bound is exhausted) and the wall clock is ignored.
  std::optional<std::uint64_t> max_steps;
  std::size_t n_replicas = 1;
  std::uint64_t base_seed = 0;
  /// Cycled over replicas; empty means default_params_grid(n_replicas).
  std::vector<DynamicsParams> params_grid;
  std::size_t readout_stride = 10;
  TightenRule tighten;
  double feasibility_tol = kDefaultFeasibilityTol;
  std::optional<double> lower_bound;
  std::optional<std::string> trace_path;
  std::size_t trace_stride = 100;
  std::size_t max_restarts = 1000;
  /// A replica re-initializes its state after this many steps without an
  /// improvement; the objective gate is kept. Unset disables it.
  std::optional<std::uint64_t> stall_steps = 20000;
  ExecPolicy kernel_policy = ExecPolicy::Auto;

  void validate() const;
};

/// Replica 0 gets `base` unchanged; later replicas scale beta, gamma, alpha,
/// delta and zeta by factors in [0.5, 2] drawn from a fixed Latin hypercube.
std::vector<DynamicsParams> default_params_grid(std::size_t count, const DynamicsParams& base = {});

enum class Termination { Timeout, Aborted, BoundExhausted };

const char* to_string(Termination t);

struct Improvement {
  double wall_time = 0.0;  // seconds since the solve started
  std::uint64_t step = 0;
  double objective = 0.0;
  BinaryVector values;
};

struct ReplicaResult {
  std::optional<Assignment> best;
  std::vector<Improvement> history;
  /// Objective-gate bounds in the order they were imposed.
  std::vector<double> bound_sequence;
  std::uint64_t steps_taken = 0;
  std::size_t restarts = 0;  // after non-finite states
  std::size_t stall_restarts = 0;
  std::uint64_t seed = 0;
  Termination termination = Termination::Timeout;
};

struct SolveReport {
  std::string model_name;
  std::optional<Assignment> best;
  std::optional<std::size_t> best_replica;
  std::vector<ReplicaResult> per_replica;
  double trivial_bound = 0.0;
  std::optional<double> lower_bound;
  std::optional<double> gap;
  double wall_time = 0.0;
  std::vector<std::uint64_t> seeds;
  bool step_limited = false;
};

struct ProgressEvent {
  double wall_time = 0.0;
  std::size_t replica = 0;
  double objective = 0.0;
};

using ProgressSink = std::function<void(const ProgressEvent&)>;

/// Uniform voltages on the open interval (-1, 1), xs = 0.5, xl = 1, t = 0.
SoacState init_state(const Soac& soac, std::uint64_t seed);

/// Seed used for the k-th restart of a replica, whatever its cause.
std::uint64_t restart_seed(std::uint64_t seed, std::size_t restart);

/// Runs one replica until the time or step limit. Readouts are checked
/// against `model`; `nm` must be normalize(model).
ReplicaResult run_replica(const IlpModel& model, const NormalizedModel& nm, const SolverConfig& config,
                          std::size_t replica_index,
                          const std::function<void(const ProgressEvent&)>& on_improvement = {});

/// Runs all replicas concurrently and keeps the best feasible assignment.
/// `progress` is invoked on the calling thread, one event per improvement.
SolveReport solve(const IlpModel& model, const SolverConfig& config, const ProgressSink& progress = {});

/// "t=<s> replica=<k> obj=<v>"
std::string format_progress(const ProgressEvent& event);

/// Aligned "key : value" lines. Wall-clock fields are omitted in step-limited
/// mode so that the text depends only on the configuration.
std::string format_report(const SolveReport& report);

}  // namespace memilp
