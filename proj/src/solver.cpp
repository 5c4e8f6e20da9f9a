#include "memilp/solver.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <condition_variable>
#include <deque>
#include <fstream>
#include <iomanip>
#include <memory>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>
#include <variant>

#include "memilp/mps_io.hpp"
#include "memilp/verify.hpp"

namespace memilp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool all_integral(std::span<const double> f) {
  return std::all_of(f.begin(), f.end(), [](double c) { return std::floor(c) == c; });
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Replicas post improvements and completion; the orchestrating thread drains.
class EventChannel {
 public:
  struct Done {};
  using Message = std::variant<ProgressEvent, Done>;

  void push(Message m) {
    {
      std::lock_guard lock(mutex_);
      queue_.push_back(std::move(m));
    }
    ready_.notify_one();
  }

  Message pop() {
    std::unique_lock lock(mutex_);
    ready_.wait(lock, [&] { return !queue_.empty(); });
    Message m = std::move(queue_.front());
    queue_.pop_front();
    return m;
  }

 private:
  std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<Message> queue_;
};

std::vector<DynamicsParams> effective_grid(const SolverConfig& config) {
  return config.params_grid.empty() ? default_params_grid(config.n_replicas) : config.params_grid;
}

std::string trace_path_for(const SolverConfig& config, std::size_t replica) {
  if (config.n_replicas == 1) return *config.trace_path;
  return *config.trace_path + ".r" + std::to_string(replica);
}

}  // namespace

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Timeout: return "timeout";
    case Termination::Aborted: return "aborted";
    case Termination::BoundExhausted: return "bound_exhausted";
  }
  return "?";
}

double tighten_bound(double best, std::span<const double> f, const TightenRule& rule) {
  const bool integral = rule.integral.value_or(all_integral(f));
  double step = 1.0;
  if (!integral) {
    double l1 = 0.0;
    for (double c : f) l1 += std::abs(c);
    const double eps_abs = rule.eps_abs.value_or(1e-6 * l1);
    step = std::max(eps_abs, rule.eps_rel * std::abs(best));
  }
  double bound = best - step;
  if (!(bound < best)) bound = std::nextafter(best, -std::numeric_limits<double>::infinity());
  return bound;
}

void SolverConfig::validate() const {
  if (!(time_limit_seconds > 0.0)) throw std::invalid_argument("time limit must be positive");
  if (n_replicas < 1) throw std::invalid_argument("need at least one replica");
  if (readout_stride < 1) throw std::invalid_argument("readout stride must be >= 1");
  if (stall_steps && *stall_steps < 1) throw std::invalid_argument("stall steps must be >= 1");
  if (trace_stride < 1) throw std::invalid_argument("trace stride must be >= 1");
  if (!(feasibility_tol >= 0.0)) throw std::invalid_argument("feasibility tolerance must be >= 0");
  for (const auto& p : params_grid) p.validate();
}

std::vector<DynamicsParams> default_params_grid(std::size_t count, const DynamicsParams& base) {
  std::vector<DynamicsParams> grid{base};
  if (count <= 1) return grid;

  // Latin hypercube over log2 factors in [-1, 1] for the count-1 extra replicas.
  const std::size_t extra = count - 1;
  constexpr std::size_t kDims = 5;
  std::mt19937_64 rng(0x5eed'a11c'e5ULL);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  std::array<std::vector<double>, kDims> columns;
  for (auto& col : columns) {
    col.resize(extra);
    for (std::size_t k = 0; k < extra; ++k) {
      col[k] = -1.0 + 2.0 * (static_cast<double>(k) + jitter(rng)) / static_cast<double>(extra);
    }
    std::shuffle(col.begin(), col.end(), rng);
  }
  for (std::size_t k = 0; k < extra; ++k) {
    DynamicsParams p = base;
    p.beta *= std::exp2(columns[0][k]);
    p.gamma *= std::exp2(columns[1][k]);
    p.alpha *= std::exp2(columns[2][k]);
    p.delta *= std::exp2(columns[3][k]);
    p.zeta *= std::exp2(columns[4][k]);
    grid.push_back(p);
  }
  return grid;
}

std::uint64_t restart_seed(std::uint64_t seed, std::size_t restart) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(restart)));
}

SoacState init_state(const Soac& soac, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  SoacState s;
  s.v.resize(soac.num_vars());
  for (auto& v : s.v) {
    do {
      v = unit(rng);
    } while (v <= -1.0 || v >= 1.0);
  }
  s.xs.assign(soac.num_gates(), kInitialShortMemory);
  s.xl.assign(soac.num_gates(), kInitialLongMemory);
  return s;
}

ReplicaResult run_replica(const IlpModel& model, const NormalizedModel& nm, const SolverConfig& config,
                          std::size_t replica_index,
                          const std::function<void(const ProgressEvent&)>& on_improvement) {
  const auto start = Clock::now();
  const auto grid = effective_grid(config);
  const DynamicsParams& params = grid[replica_index % grid.size()];
  params.validate();

  const auto& f = model.objective();
  const double lower = trivial_lower_bound(f);

  ReplicaResult result;
  result.seed = config.base_seed + replica_index;

  Soac soac = build_soac(nm);
  SoacState state = init_state(soac, result.seed);
  Integrator integrator(soac, config.kernel_policy);

  std::unique_ptr<std::ofstream> trace_file;
  std::unique_ptr<TraceWriter> trace;
  if (config.trace_path) {
    trace_file = std::make_unique<std::ofstream>(trace_path_for(config, replica_index));
    if (!*trace_file) throw std::runtime_error("cannot open trace file");
    trace = std::make_unique<TraceWriter>(*trace_file);
  }

  BinaryVector last_checked;
  std::uint64_t step = 0;
  std::uint64_t last_progress = 0;
  const auto restart = [&] {
    state = init_state(soac, restart_seed(result.seed, result.restarts + result.stall_restarts));
  };
  while (true) {
    if (step % config.readout_stride == 0) {
      BinaryVector x = readout(state, params.threshold);
      if (x != last_checked) {
        if (is_feasible(model, x, config.feasibility_tol)) {
          const double obj = evaluate_objective(model, x);
          if (!result.best || obj < result.best->objective_value) {
            const double wall = seconds_since(start);
            result.history.push_back({wall, step, obj, x});
            result.best = Assignment{x, obj};
            last_progress = step;
            if (on_improvement) on_improvement({wall, replica_index, obj});

            const double bound = tighten_bound(obj, f, config.tighten);
            if (bound < lower) {
              result.termination = Termination::BoundExhausted;
              break;
            }
            if (!soac.objective_gate_index()) {
              soac = add_objective_gate(std::move(soac), f, bound);
              extend_memories(state, soac);
              integrator = Integrator(soac, config.kernel_policy);
              result.bound_sequence.push_back(bound);
            } else if (bound / soac.objective_scale() < soac.gate(*soac.objective_gate_index()).rhs) {
              update_objective_bound(soac, bound);
              result.bound_sequence.push_back(bound);
            }
          }
        }
        last_checked = std::move(x);
      }
      if (config.max_steps) {
        if (step >= *config.max_steps) break;
      } else if (seconds_since(start) >= config.time_limit_seconds) {
        break;
      }
    }
    if (trace && step % config.trace_stride == 0) {
      const auto x = readout(state, params.threshold);
      trace->record(state, soac, params.threshold, evaluate_objective(model, x));
    }
    if (config.max_steps && step >= *config.max_steps) break;
    if (config.stall_steps && step - last_progress >= *config.stall_steps) {
      ++result.stall_restarts;
      restart();
      last_progress = step;
    }

    try {
      integrator.advance(state, soac, params);
    } catch (const NonFiniteError&) {
      if (result.restarts >= config.max_restarts) {
        result.termination = Termination::Aborted;
        break;
      }
      ++result.restarts;
      restart();
    }
    ++step;
  }
  result.steps_taken = step;
  return result;
}

SolveReport solve(const IlpModel& model, const SolverConfig& config, const ProgressSink& progress) {
  config.validate();
  const auto start = Clock::now();
  const NormalizedModel nm = normalize(model);

  SolverConfig cfg = config;
  if (cfg.params_grid.empty()) cfg.params_grid = default_params_grid(cfg.n_replicas);
  // Replicas already occupy the cores; keep kernels serial inside them.
  if (cfg.n_replicas > 1 && cfg.kernel_policy == ExecPolicy::Auto) cfg.kernel_policy = ExecPolicy::Serial;

  SolveReport report;
  report.model_name = model.name();
  report.step_limited = cfg.max_steps.has_value();
  report.per_replica.resize(cfg.n_replicas);

  EventChannel channel;
  std::vector<std::exception_ptr> errors(cfg.n_replicas);
  std::vector<std::thread> workers;
  workers.reserve(cfg.n_replicas);
  for (std::size_t k = 0; k < cfg.n_replicas; ++k) {
    workers.emplace_back([&, k] {
      try {
        report.per_replica[k] =
            run_replica(model, nm, cfg, k, [&](const ProgressEvent& e) { channel.push(e); });
      } catch (...) {
        errors[k] = std::current_exception();
      }
      channel.push(EventChannel::Done{});
    });
  }
  for (std::size_t done = 0; done < cfg.n_replicas;) {
    auto message = channel.pop();
    if (std::holds_alternative<EventChannel::Done>(message)) {
      ++done;
    } else if (progress) {
      progress(std::get<ProgressEvent>(message));
    }
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (std::size_t k = 0; k < cfg.n_replicas; ++k) {
    const auto& r = report.per_replica[k];
    report.seeds.push_back(r.seed);
    if (r.best && (!report.best || r.best->objective_value < report.best->objective_value)) {
      report.best = r.best;
      report.best_replica = k;
    }
  }
  const auto bounds = make_bounds(model.objective(), cfg.lower_bound);
  report.trivial_bound = bounds.trivial_bound;
  report.lower_bound = bounds.best_known_lb;
  if (report.best && report.best->objective_value != 0.0) {
    report.gap = gap(report.best->objective_value, *report.lower_bound);
  }
  report.wall_time = seconds_since(start);
  return report;
}

std::string format_progress(const ProgressEvent& event) {
  std::ostringstream out;
  out << "t=" << std::fixed << std::setprecision(3) << event.wall_time << " replica=" << event.replica
      << " obj=" << format_real(event.objective);
  return out.str();
}

std::string format_report(const SolveReport& report) {
  std::ostringstream out;
  auto line = [&](const std::string& key, const std::string& value) {
    out << std::left << std::setw(14) << key << ": " << value << '\n';
  };
  line("model", report.model_name.empty() ? "(unnamed)" : report.model_name);
  line("status", report.best ? "feasible" : "no_solution");
  line("objective", report.best ? format_real(report.best->objective_value) : "n/a");
  line("best_replica", report.best_replica ? std::to_string(*report.best_replica) : "n/a");
  line("trivial_bound", format_real(report.trivial_bound));
  line("lower_bound", report.lower_bound ? format_real(*report.lower_bound) : "n/a");
  std::string gap_text = report.gap ? format_real(*report.gap) : "n/a";
  if (report.gap && report.best && report.best->objective_value < 0.0) {
    gap_text += " (negative objective: |O_best| denominator)";
  }
  line("gap", gap_text);
  line("replicas", std::to_string(report.per_replica.size()));
  line("mode", report.step_limited ? "step_limited" : "wall_clock");
  if (!report.step_limited) {
    std::ostringstream t;
    t << std::fixed << std::setprecision(3) << report.wall_time;
    line("wall_time", t.str());
  }
  for (std::size_t k = 0; k < report.per_replica.size(); ++k) {
    const auto& r = report.per_replica[k];
    std::ostringstream v;
    v << "seed=" << r.seed << " steps=" << r.steps_taken << " restarts=" << r.restarts
      << " stall_restarts=" << r.stall_restarts
      << " termination=" << to_string(r.termination)
      << " best=" << (r.best ? format_real(r.best->objective_value) : std::string("n/a"))
      << " improvements=" << r.history.size();
    if (report.step_limited && !r.history.empty()) {
      v << " first_step=" << r.history.front().step << " last_step=" << r.history.back().step;
    }
    line("replica " + std::to_string(k), v.str());
  }
  return out.str();
}

}  // namespace memilp
