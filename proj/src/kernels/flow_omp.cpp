#include "memilp/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace memilp::kernels {

namespace {
constexpr std::size_t kParallelMinTerms = 1 << 15;
}

bool prefer_parallel(const Soac& soac) {
#ifdef _OPENMP
  if (omp_get_max_threads() < 2 || omp_in_parallel()) return false;
  std::size_t terms = 0;
  for (const auto& g : soac.gates()) terms += g.terms.size();
  return terms >= kParallelMinTerms;
#else
  (void)soac;
  return false;
#endif
}

void gate_violations_omp(const Soac& soac, std::span<const double> v, double threshold,
                         std::span<double> out) {
  const auto& gates = soac.gates();
  const auto m = static_cast<std::ptrdiff_t>(gates.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < m; ++i) {
    double sum = 0.0;
    for (const auto& t : gates[i].terms) if (v[t.var] > threshold) sum += t.coef;
    out[i] = std::max(0.0, sum - gates[i].rhs);
  }
}

void voltage_flow_omp(const Soac& soac, const VoltageInputs& in, std::span<double> dv) {
  const auto n = static_cast<std::ptrdiff_t>(soac.num_vars());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    double drive = 0.0;
    bool violated = false;
    for (const auto& link : soac.links(j)) {
      if (in.violation[link.gate] > 0.0) {
        violated = true;
        drive -= in.xl[link.gate] * in.xs[link.gate] * link.coef;
      }
    }
    const double vj = in.v[j];
    dv[j] = violated ? drive : in.zeta * vj * (1.0 - vj * vj);
  }
}

}  // namespace memilp::kernels
