#include <doctest.h>

#include <algorithm>

#include "memilp/dynamics.hpp"
#include "memilp/soac.hpp"
#include "support/instances.hpp"

using namespace memilp;

namespace {

NormalizedModel eq_pair() {
  const IlpModel m("p", {"x1", "x2"}, {0, 0}, {{{{0, 1}, {1, 1}}, Relation::EQ, 1, "e"}}, {});
  return normalize(m);
}

std::vector<double> corner(std::uint64_t mask, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = (mask >> j) & 1U ? 1.0 : -1.0;
  return v;
}

}  // namespace

TEST_CASE("build_soac maps rows to gates") {
  const Soac s = build_soac(eq_pair());
  CHECK(s.num_gates() == 2);
  CHECK(s.num_vars() == 2);
  CHECK_FALSE(s.objective_gate_index());
  const auto l = s.links(0);
  REQUIRE(l.size() == 2);
  CHECK(l[0].gate == 0);
  CHECK(l[1].gate == 1);
  CHECK(l[1].coef == -1.0);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(s.gate(i).kind == GateKind::Constraint);
    CHECK(s.gate(i).gate_index == i);
  }
}

TEST_CASE("build_soac with no rows") {
  const IlpModel m("e", {"a"}, {1}, {}, {});
  const Soac s = build_soac(normalize(m));
  CHECK(s.num_gates() == 0);
  CHECK(s.links(0).empty());
}

TEST_CASE("adjacency is the transpose of the gate terms") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto nm = normalize(testing::random_instance(12, 9, seed).to_model());
    const Soac s = build_soac(nm);
    std::vector<std::vector<GateLink>> expected(s.num_vars());
    for (std::size_t i = 0; i < s.num_gates(); ++i) {
      for (const auto& t : s.gate(i).terms) expected[t.var].push_back({i, t.coef});
    }
    for (std::size_t j = 0; j < s.num_vars(); ++j) {
      const auto l = s.links(j);
      CHECK(std::vector<GateLink>(l.begin(), l.end()) == expected[j]);
    }
    for (const auto& g : s.gates()) {
      for (const auto& t : g.terms) CHECK(std::abs(t.coef) <= 1.0);
    }
  }
}

TEST_CASE("add_objective_gate scales the objective") {
  Soac s = add_objective_gate(build_soac(eq_pair()), std::vector<double>{1, -2}, 0.0);
  REQUIRE(s.objective_gate_index() == 2u);
  const auto& g = s.gate(2);
  CHECK(g.kind == GateKind::Objective);
  CHECK(g.terms == std::vector<Term>{{0, 0.5}, {1, -1.0}});
  CHECK(g.rhs == 0.0);
  CHECK(s.links(1).back().gate == 2);
  CHECK_THROWS_AS(add_objective_gate(s, std::vector<double>{1, 1}, 0.0), SoacError);
}

TEST_CASE("add_objective_gate skips a zero objective") {
  const Soac s = add_objective_gate(build_soac(eq_pair()), std::vector<double>{0, 0}, 3.0);
  CHECK(s.num_gates() == 2);
  CHECK_FALSE(s.objective_gate_index());
}

TEST_CASE("objective gate at the upper bound of the linear form admits every corner") {
  const std::vector<double> f{3, -1.5, 7, 0, -2, 4.25};
  double upper = 0.0;
  for (double c : f) upper += std::max(c, 0.0);
  std::vector<std::string> names{"a", "b", "c", "d", "e", "g"};
  const IlpModel m("u", names, f, {}, {});
  const Soac s = add_objective_gate(build_soac(normalize(m)), f, upper);
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    CHECK(gate_violation(s.gate(*s.objective_gate_index()), corner(mask, 6)) == 0.0);
  }
}

TEST_CASE("update_objective_bound requires strict decrease") {
  Soac s = add_objective_gate(build_soac(eq_pair()), std::vector<double>{1, 1}, 0.0);
  update_objective_bound(s, -1.0);
  CHECK(s.objective_bound() == -1.0);
  CHECK_THROWS_AS(update_objective_bound(s, -1.0), SoacError);
  CHECK_THROWS_AS(update_objective_bound(s, 0.0), SoacError);
  CHECK(s.gate(0).rhs == 1.0);
  CHECK(s.gate(1).rhs == -1.0);

  Soac none = build_soac(eq_pair());
  CHECK_THROWS_AS(update_objective_bound(none, -5.0), SoacError);
}

TEST_CASE("zero gate violation at a corner iff the source model is feasible") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    testing::GenOptions opt;
    opt.planted = seed % 3 != 0;
    opt.coef_max = 2 + static_cast<long>(seed % 11);
    const std::size_t n = 4 + seed % 9;
    const auto inst = testing::random_instance(n, 6, seed, opt);
    const Soac s = build_soac(normalize(inst.to_model()));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const auto v = corner(mask, n);
      const bool zero = std::all_of(s.gates().begin(), s.gates().end(),
                                    [&](const AlgebraicGate& g) { return gate_violation(g, v) == 0.0; });
      REQUIRE(zero == inst.satisfies(mask));
    }
  }
}
