#include <doctest.h>

#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "memilp/exact.hpp"
#include "memilp/kernels.hpp"
#include "memilp/solver.hpp"
#include "support/instances.hpp"

using namespace memilp;

namespace {

struct ThreadCount {
  explicit ThreadCount(int n) {
#ifdef _OPENMP
    saved = omp_get_max_threads();
    omp_set_num_threads(n);
#else
    (void)n;
#endif
  }
  ~ThreadCount() {
#ifdef _OPENMP
    omp_set_num_threads(saved);
#endif
  }
  int saved = 1;
};

}  // namespace

TEST_CASE("serial and OpenMP flow kernels are bit-identical") {
  const ThreadCount threads(4);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    testing::GenOptions opt;
    opt.density = 0.1;
    opt.coef_max = 9;
    const auto model = testing::random_instance(300, 120, seed, opt).to_model();
    const Soac s = add_objective_gate(build_soac(normalize(model)), model.objective(), 0.0);
    SoacState st = init_state(s, seed);
    for (auto& x : st.xs) x = (u(rng) + 1) / 2;
    for (auto& x : st.xl) x = 1 + 10 * (u(rng) + 1);

    std::vector<double> cs(s.num_gates()), co(s.num_gates());
    kernels::gate_violations_serial(s, st.v, 0.0, cs);
    kernels::gate_violations_omp(s, st.v, 0.0, co);
    CHECK(cs == co);

    std::vector<double> ds(s.num_vars()), dp(s.num_vars());
    const kernels::VoltageInputs in{st.v, cs, st.xs, st.xl, 0.01};
    kernels::voltage_flow_serial(s, in, ds);
    kernels::voltage_flow_omp(s, in, dp);
    CHECK(ds == dp);

    SoacState a = st, b = st;
    Integrator serial(s, ExecPolicy::Serial), parallel(s, ExecPolicy::Parallel);
    for (int k = 0; k < 50; ++k) {
      serial.advance(a, s, DynamicsParams{});
      parallel.advance(b, s, DynamicsParams{});
    }
    CHECK(a == b);
  }
}

TEST_CASE("enumeration kernels agree in every order") {
  const ThreadCount threads(3);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    testing::GenOptions opt;
    opt.planted = seed % 4 != 0;
    const std::size_t n = 1 + seed % 14;
    const auto inst = testing::random_instance(n, 6, seed, opt);
    const ExactConstraintSet set(inst.to_model());
    const auto fwd = kernels::enumerate_serial(set, kernels::EnumerationOrder::Forward);
    const auto rev = kernels::enumerate_serial(set, kernels::EnumerationOrder::Reverse);
    const auto par = kernels::enumerate_omp(set);
    const auto oracle = testing::enumerate(inst);

    CHECK(fwd.enumerated == (std::uint64_t{1} << n));
    for (const auto* r : {&fwd, &rev, &par}) {
      CHECK(r->enumerated == fwd.enumerated);
      CHECK(r->feasible_count == oracle.feasible_count);
      CHECK(r->best.has_value() == oracle.optimum.has_value());
      if (r->best) {
        CHECK(*r->best == static_cast<double>(*oracle.optimum));
        CHECK(r->best_mask == fwd.best_mask);
      }
    }
  }
}

TEST_CASE("exact constraint set decides ties exactly") {
  // 0.1 + 0.2 > 0.3 in binary floating point; the decimal rows must still tie.
  const IlpModel m("tie", {"a", "b"}, {1, 1}, {{{{0, 0.1}, {1, 0.2}}, Relation::EQ, 0.3, "e"}}, {});
  const ExactConstraintSet set(m);
  CHECK(set.num_exact_rows() == 1);
  CHECK(set.feasible(0b11));
  CHECK_FALSE(set.feasible(0b01));
  CHECK(set.objective(0b11) == 2.0);
  CHECK(mask_to_vector(0b101, 4) == BinaryVector{1, 0, 1, 0});
}

TEST_CASE("prefer_parallel declines small circuits") {
  const auto model = testing::random_instance(10, 5, 1).to_model();
  CHECK_FALSE(kernels::prefer_parallel(build_soac(normalize(model))));
}
