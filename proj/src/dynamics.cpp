#include "memilp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "memilp/mps_io.hpp"

namespace memilp {

namespace {

bool use_parallel(ExecPolicy policy, const Soac& soac) {
  switch (policy) {
    case ExecPolicy::Serial: return false;
    case ExecPolicy::Parallel: return true;
    case ExecPolicy::Auto: return kernels::prefer_parallel(soac);
  }
  return false;
}

void compute_violations(const Soac& soac, std::span<const double> v, double threshold,
                        std::span<double> out, bool parallel) {
  if (parallel) {
    kernels::gate_violations_omp(soac, v, threshold, out);
  } else {
    kernels::gate_violations_serial(soac, v, threshold, out);
  }
}

void compute_voltage_flow(const Soac& soac, const kernels::VoltageInputs& in, std::span<double> dv,
                          bool parallel) {
  if (parallel) {
    kernels::voltage_flow_omp(soac, in, dv);
  } else {
    kernels::voltage_flow_serial(soac, in, dv);
  }
}

void check_shape(const SoacState& state, const Soac& soac) {
  if (state.v.size() != soac.num_vars() || state.xs.size() != soac.num_gates() ||
      state.xl.size() != soac.num_gates()) {
    throw std::invalid_argument("state dimensions do not match the circuit");
  }
}

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) throw NonFiniteError(std::string("non-finite ") + what + " derivative");
}

// Euler update with clamping. Derivatives are checked before any component
// changes, so a NonFiniteError leaves the state untouched.
void euler_clamp(SoacState& s, std::span<const double> violation, std::span<const double> dv,
                 const DynamicsParams& p) {
  for (std::size_t j = 0; j < s.v.size(); ++j) require_finite(dv[j], "voltage");
  for (std::size_t i = 0; i < s.xs.size(); ++i) {
    require_finite(p.beta * (violation[i] - p.gamma), "short-term memory");
    require_finite(p.alpha * (violation[i] - p.delta), "long-term memory");
  }
  for (std::size_t j = 0; j < s.v.size(); ++j) {
    s.v[j] = std::clamp(s.v[j] + p.dt * dv[j], -1.0, 1.0);
  }
  for (std::size_t i = 0; i < s.xs.size(); ++i) {
    const double dxs = p.beta * (violation[i] - p.gamma);
    const double dxl = p.alpha * (violation[i] - p.delta);
    s.xs[i] = std::clamp(s.xs[i] + p.dt * dxs, 0.0, 1.0);
    s.xl[i] = std::clamp(s.xl[i] + p.dt * dxl, 1.0, p.xl_max);
  }
  s.t += p.dt;
}

}  // namespace

void DynamicsParams::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive and finite");
  if (!(xl_max >= 1.0)) throw std::invalid_argument("xl_max must be >= 1");
  for (double r : {beta, gamma, alpha, delta, zeta}) {
    if (!(r >= 0.0)) throw std::invalid_argument("memory and damping rates must be nonnegative");
  }
}

double gate_violation(const AlgebraicGate& gate, std::span<const double> v) {
  double sum = 0.0;
  for (const auto& t : gate.terms) sum += t.coef * ((v[t.var] + 1.0) * 0.5);
  return std::max(0.0, sum - gate.rhs);
}

StateDerivative flow(const SoacState& state, const Soac& soac, const DynamicsParams& params,
                     ExecPolicy policy) {
  check_shape(state, soac);
  const bool parallel = use_parallel(policy, soac);
  std::vector<double> violation(soac.num_gates());
  compute_violations(soac, state.v, params.threshold, violation, parallel);

  StateDerivative d;
  d.v.resize(soac.num_vars());
  compute_voltage_flow(soac, {state.v, violation, state.xs, state.xl, params.zeta}, d.v, parallel);
  d.xs.resize(soac.num_gates());
  d.xl.resize(soac.num_gates());
  for (std::size_t i = 0; i < soac.num_gates(); ++i) {
    d.xs[i] = params.beta * (violation[i] - params.gamma);
    d.xl[i] = params.alpha * (violation[i] - params.delta);
  }
  return d;
}

SoacState step(const SoacState& state, const Soac& soac, const DynamicsParams& params,
               ExecPolicy policy) {
  SoacState next = state;
  Integrator(soac, policy).advance(next, soac, params);
  return next;
}

BinaryVector readout(const SoacState& state, double threshold) {
  BinaryVector x(state.v.size());
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = state.v[j] > threshold ? 1 : 0;
  return x;
}

bool within_bounds(const SoacState& state, const DynamicsParams& params) {
  const auto in = [](double x, double lo, double hi) { return x >= lo && x <= hi; };
  return std::all_of(state.v.begin(), state.v.end(), [&](double x) { return in(x, -1.0, 1.0); }) &&
         std::all_of(state.xs.begin(), state.xs.end(), [&](double x) { return in(x, 0.0, 1.0); }) &&
         std::all_of(state.xl.begin(), state.xl.end(),
                     [&](double x) { return in(x, 1.0, params.xl_max); });
}

void extend_memories(SoacState& state, const Soac& soac) {
  state.xs.resize(soac.num_gates(), kInitialShortMemory);
  state.xl.resize(soac.num_gates(), kInitialLongMemory);
}

Integrator::Integrator(const Soac& soac, ExecPolicy policy)
    : parallel_(use_parallel(policy, soac)), violation_(soac.num_gates()), dv_(soac.num_vars()) {}

void Integrator::advance(SoacState& state, const Soac& soac, const DynamicsParams& params) {
  check_shape(state, soac);
  violation_.resize(soac.num_gates());
  dv_.resize(soac.num_vars());
  compute_violations(soac, state.v, params.threshold, violation_, parallel_);
  compute_voltage_flow(soac, {state.v, violation_, state.xs, state.xl, params.zeta}, dv_, parallel_);
  euler_clamp(state, violation_, dv_, params);
}

TraceWriter::TraceWriter(std::ostream& out) : out_(out) {
  out_ << "t,max_violation,n_violated_gates,objective_of_readout\n";
}

void TraceWriter::record(const SoacState& state, const Soac& soac, double threshold,
                         double objective_of_readout) {
  violation_.resize(soac.num_gates());
  kernels::gate_violations_serial(soac, state.v, threshold, violation_);
  double worst = 0.0;
  std::size_t count = 0;
  for (double c : violation_) {
    worst = std::max(worst, c);
    if (c > 0.0) ++count;
  }
  out_ << format_real(state.t) << ',' << format_real(worst) << ',' << count << ','
       << format_real(objective_of_readout) << '\n';
}

}  // namespace memilp
