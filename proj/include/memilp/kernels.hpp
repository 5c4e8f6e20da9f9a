#pragma once

// Data-parallel inner loops of the circuit simulation and the enumeration
// oracle. Each kernel has a serial reference and an OpenMP version; both
// visit every output element with the same arithmetic in the same order, so
// their results are bit-identical for any thread count.

#include <cstdint>
#include <optional>
#include <span>

#include "memilp/soac.hpp"

namespace memilp {

class ExactConstraintSet;

namespace kernels {

enum class ExecPolicy { Serial, Parallel, Auto };

/// D_i = max(0, sum_j a_ij [v_j > threshold] - b_i) for every gate: the
/// violation of the digital readout of v.
void gate_violations_serial(const Soac& soac, std::span<const double> v, double threshold,
                            std::span<double> out);
void gate_violations_omp(const Soac& soac, std::span<const double> v, double threshold,
                         std::span<double> out);

struct VoltageInputs {
  std::span<const double> v;
  std::span<const double> violation;
  std::span<const double> xs;
  std::span<const double> xl;
  double zeta = 0.0;
};

/// dv_j = -sum_{i in gates(j), D_i > 0} xl_i xs_i a_ij, or zeta v_j (1 - v_j^2)
/// when no gate touching j is violated.
void voltage_flow_serial(const Soac& soac, const VoltageInputs& in, std::span<double> dv);
void voltage_flow_omp(const Soac& soac, const VoltageInputs& in, std::span<double> dv);

/// True when the parallel kernels are worth their fork/join cost for this circuit.
bool prefer_parallel(const Soac& soac);

struct EnumerationResult {
  std::uint64_t feasible_count = 0;
  std::uint64_t enumerated = 0;
  std::optional<double> best;
  std::uint64_t best_mask = 0;  // bit j is x_j; smallest mask among ties
};

enum class EnumerationOrder { Forward, Reverse };

EnumerationResult enumerate_serial(const ExactConstraintSet& set,
                                   EnumerationOrder order = EnumerationOrder::Forward);
EnumerationResult enumerate_omp(const ExactConstraintSet& set);

}  // namespace kernels

using kernels::ExecPolicy;

}  // namespace memilp
