#include "memilp/kernels.hpp"

#include <algorithm>

namespace memilp::kernels {

void gate_violations_serial(const Soac& soac, std::span<const double> v, double threshold,
                            std::span<double> out) {
  const auto& gates = soac.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    double sum = 0.0;
    for (const auto& t : gates[i].terms) if (v[t.var] > threshold) sum += t.coef;
    out[i] = std::max(0.0, sum - gates[i].rhs);
  }
}

void voltage_flow_serial(const Soac& soac, const VoltageInputs& in, std::span<double> dv) {
  const std::size_t n = soac.num_vars();
  for (std::size_t j = 0; j < n; ++j) {
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
