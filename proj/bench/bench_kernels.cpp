// Serial reference vs OpenMP kernels on a synthetic circuit and enumeration.
//   ./build/bench/bench_kernels --benchmark_filter=Flow

#include <benchmark/benchmark.h>

#include <random>

#include "memilp/dynamics.hpp"
#include "memilp/exact.hpp"
#include "memilp/kernels.hpp"
#include "memilp/solver.hpp"

namespace {

memilp::IlpModel random_model(std::size_t n, std::size_t m, std::size_t row_len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  std::vector<std::string> names(n);
  std::vector<double> f(n);
  for (std::size_t j = 0; j < n; ++j) {
    names[j] = "x" + std::to_string(j);
    f[j] = coef(rng);
  }
  std::vector<memilp::LinearConstraint> rows;
  for (std::size_t i = 0; i < m; ++i) {
    memilp::LinearConstraint c;
    c.name = "r" + std::to_string(i);
    std::vector<bool> used(n, false);
    while (c.terms.size() < row_len) {
      const auto j = var(rng);
      if (used[j]) continue;
      used[j] = true;
      int a = coef(rng);
      c.terms.push_back({j, a == 0 ? 1.0 : double(a)});
    }
    c.rhs = 2.0;
    rows.push_back(std::move(c));
  }
  return memilp::IlpModel("bench", std::move(names), std::move(f), {}, std::move(rows));
}

struct FlowFixture {
  memilp::Soac soac;
  memilp::SoacState state;
  std::vector<double> violation;
  std::vector<double> dv;

  explicit FlowFixture(std::size_t n)
      : soac(memilp::build_soac(memilp::normalize(random_model(n, n / 2, 20, 7)))),
        state(memilp::init_state(soac, 1)),
        violation(soac.num_gates()),
        dv(soac.num_vars()) {}
};

void BM_FlowSerial(benchmark::State& st) {
  FlowFixture fx(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    memilp::kernels::gate_violations_serial(fx.soac, fx.state.v, 0.0, fx.violation);
    memilp::kernels::voltage_flow_serial(fx.soac, {fx.state.v, fx.violation, fx.state.xs, fx.state.xl, 0.01},
                                         fx.dv);
    benchmark::DoNotOptimize(fx.dv.data());
  }
}

void BM_FlowOmp(benchmark::State& st) {
  FlowFixture fx(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    memilp::kernels::gate_violations_omp(fx.soac, fx.state.v, 0.0, fx.violation);
    memilp::kernels::voltage_flow_omp(fx.soac, {fx.state.v, fx.violation, fx.state.xs, fx.state.xl, 0.01},
                                      fx.dv);
    benchmark::DoNotOptimize(fx.dv.data());
  }
}

void BM_EnumerateSerial(benchmark::State& st) {
  const memilp::ExactConstraintSet set(random_model(static_cast<std::size_t>(st.range(0)), 8, 6, 3));
  for (auto _ : st) benchmark::DoNotOptimize(memilp::kernels::enumerate_serial(set));
}

void BM_EnumerateOmp(benchmark::State& st) {
  const memilp::ExactConstraintSet set(random_model(static_cast<std::size_t>(st.range(0)), 8, 6, 3));
  for (auto _ : st) benchmark::DoNotOptimize(memilp::kernels::enumerate_omp(set));
}

}  // namespace

BENCHMARK(BM_FlowSerial)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK(BM_FlowOmp)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK(BM_EnumerateSerial)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateOmp)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
