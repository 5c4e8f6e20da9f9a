#include "memilp/soac.hpp"

#include <algorithm>
#include <cmath>

namespace memilp {

double coefficient_scale(std::span<const double> coefs) {
  double m = 0.0;
  for (double c : coefs) m = std::max(m, std::abs(c));
  return scale_for(m);
}

double Soac::objective_bound() const {
  if (!objective_gate_) throw SoacError("circuit has no objective gate");
  return gates_[*objective_gate_].rhs * objective_scale_;
}

void Soac::rebuild_links() {
  std::vector<std::size_t> count(n_vars_ + 1, 0);
  for (const auto& g : gates_) {
    for (const auto& t : g.terms) ++count[t.var + 1];
  }
  link_begin_.assign(n_vars_ + 1, 0);
  for (std::size_t j = 0; j < n_vars_; ++j) link_begin_[j + 1] = link_begin_[j] + count[j + 1];
  links_.assign(link_begin_.back(), {});
  std::vector<std::size_t> cursor(link_begin_.begin(), link_begin_.end() - 1);
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    for (const auto& t : gates_[i].terms) links_[cursor[t.var]++] = {i, t.coef};
  }
}

Soac build_soac(const NormalizedModel& nm) {
  Soac soac;
  soac.n_vars_ = nm.num_vars;
  soac.gates_.reserve(nm.rows.size() + 1);
  for (std::size_t i = 0; i < nm.rows.size(); ++i) {
    const auto& row = nm.rows[i];
    soac.gates_.push_back({row.terms, row.rhs, GateKind::Constraint, i});
  }
  soac.rebuild_links();
  return soac;
}

Soac add_objective_gate(Soac soac, std::span<const double> f, double b_tilde) {
  if (soac.objective_gate_) throw SoacError("objective gate already present");
  if (f.size() != soac.n_vars_) throw SoacError("objective length differs from circuit width");
  if (std::all_of(f.begin(), f.end(), [](double c) { return c == 0.0; })) return soac;

  const double scale = coefficient_scale(f);
  AlgebraicGate gate;
  gate.kind = GateKind::Objective;
  gate.gate_index = soac.gates_.size();
  gate.rhs = b_tilde / scale;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (f[j] != 0.0) gate.terms.push_back({j, f[j] / scale});
  }
  soac.objective_gate_ = gate.gate_index;
  soac.objective_scale_ = scale;
  soac.gates_.push_back(std::move(gate));
  soac.rebuild_links();
  return soac;
}

void update_objective_bound(Soac& soac, double new_b) {
  if (!soac.objective_gate_) throw SoacError("circuit has no objective gate");
  auto& gate = soac.gates_[*soac.objective_gate_];
  const double scaled = new_b / soac.objective_scale_;
  if (!(scaled < gate.rhs)) throw SoacError("objective bound must strictly decrease");
  gate.rhs = scaled;
}

}  // namespace memilp
