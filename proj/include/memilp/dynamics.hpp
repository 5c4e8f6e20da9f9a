#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "memilp/kernels.hpp"
#include "memilp/model.hpp"
#include "memilp/soac.hpp"

namespace memilp {

/// Rates and limits of the circuit equations. Defaults are a starting point
/// for the replica parameter grid.
struct DynamicsParams {
  double dt = 0.1;
  double beta = 20.0;   // short-term memory rate
  double gamma = 0.05;  // short-term memory threshold
  double alpha = 1.0;   // long-term memory rate
  double delta = 0.1;   // long-term memory threshold
  double xl_max = 1e4;
  double zeta = 0.01;   // saturation drive on unconstrained voltages
  double threshold = 0.0;

  /// Throws std::invalid_argument unless dt > 0, xl_max >= 1 and all rates >= 0.
  void validate() const;

  friend bool operator==(const DynamicsParams&, const DynamicsParams&) = default;
};

/// Voltages v in [-1,1]^n, short-term memory xs in [0,1] and long-term memory
/// xl in [1, xl_max] per gate, and the elapsed dynamical time.
struct SoacState {
  std::vector<double> v;
  std::vector<double> xs;
  std::vector<double> xl;
  double t = 0.0;

  friend bool operator==(const SoacState&, const SoacState&) = default;
};

struct StateDerivative {
  std::vector<double> v;
  std::vector<double> xs;
  std::vector<double> xl;
};

/// Raised when the flow produces NaN or infinity.
class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kInitialShortMemory = 0.5;
inline constexpr double kInitialLongMemory = 1.0;

/// max(0, sum_j a_j (v_j + 1)/2 - rhs).
double gate_violation(const AlgebraicGate& gate, std::span<const double> v);

/// Voltage drive and memories respond to each gate's violation at the
/// readout of v, so a state feels the same forces as the corner it reads out to.
StateDerivative flow(const SoacState& state, const Soac& soac, const DynamicsParams& params,
                     ExecPolicy policy = ExecPolicy::Auto);

/// One forward-Euler step followed by clamping to the state bounds.
SoacState step(const SoacState& state, const Soac& soac, const DynamicsParams& params,
               ExecPolicy policy = ExecPolicy::Auto);

/// x_j = 1 iff v_j > threshold.
BinaryVector readout(const SoacState& state, double threshold = 0.0);

bool within_bounds(const SoacState& state, const DynamicsParams& params);

/// Appends resting memories for gates added since the state was created.
void extend_memories(SoacState& state, const Soac& soac);

/// Allocation-free stepping for the solver loop; produces exactly the same
/// states as step().
class Integrator {
 public:
  Integrator(const Soac& soac, ExecPolicy policy = ExecPolicy::Auto);

  void advance(SoacState& state, const Soac& soac, const DynamicsParams& params);

  /// Readout gate violations computed during the last advance (pre-step state).
  std::span<const double> last_violations() const { return violation_; }

 private:
  bool parallel_ = false;
  std::vector<double> violation_;
  std::vector<double> dv_;
};

/// CSV trace "t,max_violation,n_violated_gates,objective_of_readout"; the
/// violations are those of the readout.
class TraceWriter {
 public:
  explicit TraceWriter(std::ostream& out);
  void record(const SoacState& state, const Soac& soac, double threshold, double objective_of_readout);

 private:
  std::ostream& out_;
  std::vector<double> violation_;
};

}  // namespace memilp
