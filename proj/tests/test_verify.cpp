#include <doctest.h>

#include <cmath>
#include <random>

#include "memilp/verify.hpp"
#include "support/instances.hpp"

using namespace memilp;

TEST_CASE("gap") {
  CHECK(gap(100, 75) == 0.25);
  CHECK(gap(-7.5, -7.5) == 0.0);
  CHECK(gap(3, 3) == 0.0);
  CHECK(std::abs(gap(-4208.27, -4283.04) - 0.01777) <= 1e-5);
  CHECK_THROWS_AS(gap(0.0, -1.0), VerifyError);
}

TEST_CASE("gap decreases strictly in the lower bound") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(1.0, 1000.0);
  for (int k = 0; k < 200; ++k) {
    const double best = u(rng);
    const double lo = best - u(rng);
    CHECK(gap(best, lo) > gap(best, lo + 0.5));
  }
}

TEST_CASE("trivial lower bound") {
  CHECK(trivial_lower_bound(std::vector<double>{3, -2, 0}) == -2.0);
  CHECK(trivial_lower_bound(std::vector<double>{1, 2}) == 0.0);
  const auto b = make_bounds(std::vector<double>{-1, -1}, -1.5);
  CHECK(b.trivial_bound == -2.0);
  CHECK(b.best_known_lb == -1.5);
  CHECK(make_bounds(std::vector<double>{-1}, -3.0).best_known_lb == -1.0);
  CHECK(make_bounds(std::vector<double>{-1}, std::nullopt).best_known_lb == -1.0);
}

TEST_CASE("trivial bound never exceeds the optimum") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = testing::random_instance(4 + seed % 9, 6, seed);
    const auto oracle = testing::enumerate(inst);
    REQUIRE(oracle.optimum);
    CHECK(trivial_lower_bound(inst.to_model().objective()) <= static_cast<double>(*oracle.optimum));
  }
}

TEST_CASE("brute force examples") {
  const IlpModel pack("pk", {"x1", "x2"}, {-1, -1}, {}, {{{{0, 1}, {1, 1}}, Relation::LE, 1, "c"}});
  const auto r = brute_force(pack);
  CHECK(r.optimum == -1.0);
  CHECK(r.feasible_count == 3);
  CHECK(r.enumerated == 4);
  CHECK(r.arg_optimum == BinaryVector{1, 0});

  const IlpModel none("inf", {"x1"}, {1}, {}, {{{{0, 1}}, Relation::LE, 0, "a"}, {{{0, -1}}, Relation::LE, -1, "b"}});
  const auto q = brute_force(none);
  CHECK_FALSE(q.optimum);
  CHECK_FALSE(q.arg_optimum);
  CHECK(q.feasible_count == 0);

  const std::vector<double> f{2, -3, 0.5, -1.25};
  const IlpModel free("free", {"a", "b", "c", "d"}, f, {}, {});
  CHECK(brute_force(free).optimum == trivial_lower_bound(f));

  CHECK_THROWS_AS(brute_force(free, 3), VerifyError);
}

TEST_CASE("brute force matches the integer oracle and its optimum is feasible") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    testing::GenOptions opt;
    opt.planted = seed % 5 != 0;
    const auto inst = testing::random_instance(5 + seed % 12, 7, seed, opt);
    const auto model = inst.to_model();
    const auto oracle = testing::enumerate(inst);
    for (auto policy : {ExecPolicy::Serial, ExecPolicy::Parallel}) {
      const auto r = brute_force(model, 24, policy);
      CHECK(r.feasible_count == oracle.feasible_count);
      REQUIRE(r.optimum.has_value() == oracle.optimum.has_value());
      if (r.optimum) {
        CHECK(*r.optimum == static_cast<double>(*oracle.optimum));
        CHECK(inst.satisfies(*r.arg_optimum));
        CHECK(check_feasible(model, *r.arg_optimum, 0.0).feasible);
      }
    }
  }
}

TEST_CASE("check_solution_file") {
  const IlpModel m("pk", {"x1", "x2", "x3"}, {-1, -1, 2}, {},
                   {{{{0, 1}, {1, 1}}, Relation::LE, 1, "pack"}});

  const auto own = check_solution_file(m, parse_sol(write_sol(make_assignment(m, {1, 0, 0}), m.var_names())));
  CHECK(own.feasible);
  CHECK(own.objective_matches);
  CHECK(own.assignment.objective_value == -1.0);

  const auto bad = check_solution_file(m, parse_sol("=obj= -2\nx1 1\nx2 1\nx3 0\n"));
  CHECK_FALSE(bad.feasible);
  REQUIRE(bad.violated_rows.size() == 1);
  CHECK(bad.violated_rows[0].name == "pack");
  CHECK(bad.objective_matches);

  const auto missing = check_solution_file(m, parse_sol("x2 1\n"));
  CHECK(missing.feasible);
  CHECK(missing.assignment.values == BinaryVector{0, 1, 0});
  CHECK(missing.warnings.size() == 1);

  const auto wrong_obj = check_solution_file(m, parse_sol("=obj= 5\nx1 1\n"));
  CHECK(wrong_obj.feasible);
  CHECK_FALSE(wrong_obj.objective_matches);

  const auto close_obj = check_solution_file(m, parse_sol("=obj= -1.00005\nx1 1\n"));
  CHECK(close_obj.objective_matches);

  const auto frac = check_solution_file(m, parse_sol("x1 0.5\n"));
  CHECK_FALSE(frac.feasible);
  CHECK(frac.non_integral == std::vector<std::string>{"x1"});

  CHECK_THROWS_AS(check_solution_file(m, parse_sol("y 1\n")), VerifyError);
}

TEST_CASE("format_verdict lists every field") {
  const IlpModel m("pk", {"x1", "x2"}, {-1, -1}, {}, {{{{0, 1}, {1, 1}}, Relation::LE, 1, "pack"}});
  const auto v = check_solution_file(m, parse_sol("=obj= -1\nx1 1\nx2 0\n"));
  const std::string text = format_verdict(v, -2.0);
  for (const char* key : {"feasible", "objective", "declared_objective", "objective_match", "violated_rows",
                          "non_integral", "gap"}) {
    CHECK(text.find(std::string(key) + ":") != std::string::npos);
  }
  CHECK(text.find("gap: 1") != std::string::npos);
}
