#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "memilp/model.hpp"

namespace memilp {

class SoacError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class GateKind { Constraint, Objective };

/// One linear "<=" relation between binary terminals: sum_j a_j x_j <= rhs,
/// with every a_j in [-1, 1].
struct AlgebraicGate {
  std::vector<Term> terms;
  double rhs = 0.0;
  GateKind kind = GateKind::Constraint;
  std::size_t gate_index = 0;
};

/// Entry of the variable-to-gate adjacency (transpose of the gate term lists).
struct GateLink {
  std::size_t gate = 0;
  double coef = 0.0;

  friend bool operator==(const GateLink&, const GateLink&) = default;
};

/// Self-organizing algebraic circuit: one gate per normalized row plus an
/// optional objective gate whose rhs is the only mutable quantity.
class Soac {
 public:
  Soac() = default;

  std::size_t num_vars() const { return n_vars_; }
  std::size_t num_gates() const { return gates_.size(); }
  const std::vector<AlgebraicGate>& gates() const { return gates_; }
  const AlgebraicGate& gate(std::size_t i) const { return gates_[i]; }

  /// Gates touching variable j, in increasing gate order.
  std::span<const GateLink> links(std::size_t var) const {
    return {links_.data() + link_begin_[var], link_begin_[var + 1] - link_begin_[var]};
  }

  std::optional<std::size_t> objective_gate_index() const { return objective_gate_; }
  /// Factor the objective coefficients and bound were divided by.
  double objective_scale() const { return objective_scale_; }
  /// Objective gate bound in the original (unscaled) objective units.
  double objective_bound() const;

 private:
  friend Soac build_soac(const NormalizedModel& nm);
  friend Soac add_objective_gate(Soac soac, std::span<const double> f, double b_tilde);
  friend void update_objective_bound(Soac& soac, double new_b);

  void rebuild_links();

  std::size_t n_vars_ = 0;
  std::vector<AlgebraicGate> gates_;
  std::vector<std::size_t> link_begin_{0};
  std::vector<GateLink> links_;
  std::optional<std::size_t> objective_gate_;
  double objective_scale_ = 1.0;
};

Soac build_soac(const NormalizedModel& nm);

/// Appends the gate sum_j f_j x_j <= b_tilde. Returns the circuit unchanged
/// when f is all zeros. Throws SoacError when an objective gate already exists.
Soac add_objective_gate(Soac soac, std::span<const double> f, double b_tilde);

/// Tightens the objective gate bound; new_b is in original objective units and
/// must be strictly below the current bound after scaling.
void update_objective_bound(Soac& soac, double new_b);

/// Power-of-two scale >= max(1, max|c|) shared by row and objective scaling.
double coefficient_scale(std::span<const double> coefs);

}  // namespace memilp
