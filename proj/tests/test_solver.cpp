#include <doctest.h>

#include <cmath>
#include <random>

#include "memilp/solver.hpp"
#include "memilp/verify.hpp"
#include "support/instances.hpp"

using namespace memilp;

namespace {

IlpModel infeasible_model() {
  return IlpModel("inf", {"x1"}, {1}, {},
                  {{{{0, 1}}, Relation::LE, 0, "a"}, {{{0, -1}}, Relation::LE, -1, "b"}});
}

SolverConfig steps(std::uint64_t n, std::size_t replicas = 1, std::uint64_t seed = 0) {
  SolverConfig c;
  c.max_steps = n;
  c.n_replicas = replicas;
  c.base_seed = seed;
  return c;
}

}  // namespace

TEST_CASE("tighten_bound examples") {
  const std::vector<double> integral{3, -1, 2};
  CHECK(tighten_bound(1950, integral) == 1949);
  TightenRule rule;
  rule.eps_abs = 0.5;
  rule.integral = false;
  CHECK(tighten_bound(10.0, std::vector<double>{0.5, 1.5}, rule) == 9.5);
  rule.eps_rel = 0.1;
  CHECK(tighten_bound(-20.0, std::vector<double>{0.5}, rule) == -22.0);
  // default eps_abs is 1e-6 * ||f||_1
  CHECK(tighten_bound(1.0, std::vector<double>{0.25, -0.75}) == 1.0 - 1e-6);
}

TEST_CASE("tighten_bound is strictly below the incumbent") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> mag(-1e9, 1e9);
  std::uniform_real_distribution<double> coef(-5, 5);
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> f(1 + rng() % 6);
    for (auto& c : f) c = k % 2 ? std::round(coef(rng)) : coef(rng);
    const double best = k % 3 ? mag(rng) : coef(rng);
    CHECK(tighten_bound(best, f) < best);
  }
}

TEST_CASE("init_state") {
  const Soac s = build_soac(normalize(testing::random_instance(20, 6, 3).to_model()));
  CHECK(init_state(s, 9) == init_state(s, 9));
  for (std::uint64_t k = 0; k < 100; ++k) CHECK(init_state(s, 2 * k).v != init_state(s, 2 * k + 1).v);
  const auto st = init_state(s, 5);
  for (double v : st.v) CHECK(std::abs(v) < 1.0);
  CHECK(st.xs == std::vector<double>(s.num_gates(), kInitialShortMemory));
  CHECK(st.xl == std::vector<double>(s.num_gates(), kInitialLongMemory));
  CHECK(st.t == 0.0);
  CHECK(restart_seed(5, 1) != restart_seed(5, 2));
  CHECK(restart_seed(5, 1) != 5);
}

TEST_CASE("default parameter grid") {
  const DynamicsParams base;
  const auto grid = default_params_grid(8, base);
  REQUIRE(grid.size() == 8);
  CHECK(grid[0] == base);
  for (const auto& p : grid) {
    CHECK(p.dt == base.dt);
    for (auto [x, b] : {std::pair{p.beta, base.beta}, {p.gamma, base.gamma}, {p.alpha, base.alpha},
                        {p.delta, base.delta}, {p.zeta, base.zeta}}) {
      CHECK(x >= 0.5 * b);
      CHECK(x <= 2.0 * b);
    }
  }
  CHECK(default_params_grid(8, base) == grid);
  CHECK(default_params_grid(1, base).size() == 1);
}

TEST_CASE("config validation") {
  SolverConfig c;
  CHECK_NOTHROW(c.validate());
  c.time_limit_seconds = 0;
  CHECK_THROWS(c.validate());
  c = {};
  c.n_replicas = 0;
  CHECK_THROWS(c.validate());
  c = {};
  c.readout_stride = 0;
  CHECK_THROWS(c.validate());
  c = {};
  c.stall_steps = 0;
  CHECK_THROWS(c.validate());
}

TEST_CASE("run_replica on a vacuous model") {
  const IlpModel m("v", {"a", "b"}, {0, 0}, {}, {});
  const auto r = run_replica(m, normalize(m), steps(1000), 0);
  REQUIRE(r.history.size() == 1);
  CHECK(r.history[0].objective == 0.0);
  CHECK(r.history[0].step == 0);
  CHECK(r.best->objective_value == 0.0);
}

TEST_CASE("run_replica times out on an infeasible model") {
  const IlpModel m = infeasible_model();
  SolverConfig c;
  c.time_limit_seconds = 0.2;
  const auto r = run_replica(m, normalize(m), c, 0);
  CHECK(r.termination == Termination::Timeout);
  CHECK_FALSE(r.best);
  CHECK(r.history.empty());
}

TEST_CASE("run_replica exhausts the bound at the trivial optimum") {
  const IlpModel m("u", {"a", "b", "c"}, {-1, 2, -3}, {}, {});
  const auto r = run_replica(m, normalize(m), steps(200000), 0);
  CHECK(r.termination == Termination::BoundExhausted);
  REQUIRE(r.best);
  CHECK(r.best->objective_value == -4.0);
}

TEST_CASE("stall restarts") {
  const IlpModel m = infeasible_model();
  auto c = steps(1000);
  c.stall_steps = 100;
  CHECK(run_replica(m, normalize(m), c, 0).stall_restarts == 9);
  c.stall_steps.reset();
  CHECK(run_replica(m, normalize(m), c, 0).stall_restarts == 0);
}

TEST_CASE("anytime soundness and strict improvement") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto inst = testing::random_instance(12, 6, 500 + seed);
    const auto model = inst.to_model();
    const auto nm = normalize(model);
    const auto r = run_replica(model, nm, steps(30000, 1, seed), 0);
    for (std::size_t k = 0; k < r.history.size(); ++k) {
      if (k > 0) CHECK(r.history[k].objective < r.history[k - 1].objective);
      CHECK(inst.satisfies(r.history[k].values));
      CHECK(evaluate_objective(model, r.history[k].values) == r.history[k].objective);
    }
    for (std::size_t k = 1; k < r.bound_sequence.size(); ++k) {
      CHECK(r.bound_sequence[k] < r.bound_sequence[k - 1]);
    }
    if (r.best) {
      CHECK(r.best->objective_value == r.history.back().objective);
      CHECK(inst.satisfies(r.best->values));
      const auto verdict = check_solution_file(model, parse_sol(write_sol(*r.best, model.var_names())));
      CHECK(verdict.feasible);
      CHECK(verdict.objective_matches);
    }
  }
}

TEST_CASE("solve merges replicas by minimum objective") {
  const auto inst = testing::random_instance(14, 7, 77);
  const auto model = inst.to_model();
  const auto report = solve(model, steps(5000, 3, 40));
  REQUIRE(report.per_replica.size() == 3);
  CHECK(report.seeds == std::vector<std::uint64_t>{40, 41, 42});
  CHECK(report.step_limited);
  for (const auto& r : report.per_replica) {
    if (r.best) {
      REQUIRE(report.best);
      CHECK(report.best->objective_value <= r.best->objective_value);
    }
  }
  if (report.best) {
    CHECK(report.per_replica[*report.best_replica].best->objective_value == report.best->objective_value);
    CHECK(report.lower_bound == report.trivial_bound);
  }
}

TEST_CASE("step-limited solve is deterministic") {
  const auto model = testing::random_instance(15, 8, 1234).to_model();
  std::vector<std::string> seen;
  for (int run = 0; run < 2; ++run) {
    const auto report = solve(model, steps(20000, 2, 9));
    seen.push_back(format_report(report) + (report.best ? write_sol(*report.best, model.var_names()) : ""));
  }
  CHECK(seen[0] == seen[1]);
}

TEST_CASE("solve respects the time limit") {
  SolverConfig c;
  c.time_limit_seconds = 0.3;
  c.n_replicas = 2;
  const auto report = solve(infeasible_model(), c);
  CHECK(report.wall_time >= 0.3);
  CHECK(report.wall_time < 0.3 + 0.2);
  CHECK_FALSE(report.best);
  CHECK_FALSE(report.gap);
}

TEST_CASE("solve uses an external lower bound and reports progress") {
  const IlpModel m("k", {"a", "b"}, {-2, -3}, {}, {{{{0, 1}, {1, 1}}, Relation::LE, 1, "c"}});
  auto c = steps(5000);
  c.lower_bound = -4.0;
  std::vector<ProgressEvent> events;
  const auto report = solve(m, c, [&](const ProgressEvent& e) { events.push_back(e); });
  REQUIRE(report.best);
  CHECK(report.best->objective_value == -3.0);
  CHECK(report.trivial_bound == -5.0);
  CHECK(report.lower_bound == -4.0);
  CHECK(report.gap == doctest::Approx(1.0 / 3.0));
  CHECK(events.size() == report.per_replica[0].history.size());
  CHECK(format_progress({1.5, 2, -3.0}) == "t=1.500 replica=2 obj=-3");
}
