#include "memilp/model.hpp"

#include <cmath>
#include <unordered_set>

namespace memilp {

const char* to_string(Relation rel) {
  switch (rel) {
    case Relation::LE: return "LE";
    case Relation::GE: return "GE";
    case Relation::EQ: return "EQ";
  }
  return "?";
}

double LinearConstraint::activity(std::span<const std::uint8_t> x) const {
  double sum = 0.0;
  for (const auto& t : terms) {
    if (x[t.var]) sum += t.coef;
  }
  return sum;
}

namespace {

void validate_constraint(const LinearConstraint& c, std::size_t n, bool expect_eq) {
  const std::string label = c.name.empty() ? std::string("<unnamed>") : c.name;
  if (c.terms.empty()) throw ModelError("constraint '" + label + "' has no terms");
  if (expect_eq != (c.relation == Relation::EQ)) {
    throw ModelError("constraint '" + label + "' filed under the wrong relation list");
  }
  if (!std::isfinite(c.rhs)) throw ModelError("constraint '" + label + "' has non-finite rhs");
  std::unordered_set<std::size_t> seen;
  for (const auto& t : c.terms) {
    if (t.var >= n) throw ModelError("constraint '" + label + "' references variable out of range");
    if (!std::isfinite(t.coef)) {
      throw ModelError("constraint '" + label + "' has a non-finite coefficient");
    }
    if (!seen.insert(t.var).second) {
      throw ModelError("constraint '" + label + "' repeats a variable");
    }
  }
}

void push_scaled(NormalizedModel& nm, const LinearConstraint& c, double sign, RowOrigin origin) {
  double max_abs = 0.0;
  for (const auto& t : c.terms) max_abs = std::max(max_abs, std::abs(t.coef));
  const double scale = scale_for(max_abs);

  LinearConstraint row;
  row.name = c.name;
  row.relation = Relation::LE;
  row.rhs = sign * c.rhs / scale;
  row.terms.reserve(c.terms.size());
  for (const auto& t : c.terms) row.terms.push_back({t.var, sign * t.coef / scale});

  nm.rows.push_back(std::move(row));
  nm.row_scale.push_back(scale);
  nm.origin.push_back(origin);
}

void check_dim(const IlpModel& model, std::span<const std::uint8_t> x) {
  if (x.size() != model.num_vars()) {
    throw ModelError("assignment has " + std::to_string(x.size()) + " entries, model has " +
                     std::to_string(model.num_vars()) + " variables");
  }
}

// Signed violation, positive when the row is violated (EQ keeps its sign).
double signed_violation(const LinearConstraint& c, double activity) {
  switch (c.relation) {
    case Relation::LE: return activity - c.rhs;
    case Relation::GE: return c.rhs - activity;
    case Relation::EQ: return activity - c.rhs;
  }
  return 0.0;
}

bool violates(const LinearConstraint& c, double amount, double tol) {
  return c.relation == Relation::EQ ? std::abs(amount) > tol : amount > tol;
}

}  // namespace

double scale_for(double max_abs) {
  if (max_abs <= 1.0) return 1.0;
  int e = 0;
  const double frac = std::frexp(max_abs, &e);
  return frac == 0.5 ? max_abs : std::ldexp(1.0, e);
}

IlpModel::IlpModel(std::string name, std::vector<std::string> var_names,
                   std::vector<double> objective, std::vector<LinearConstraint> eq_constraints,
                   std::vector<LinearConstraint> ineq_constraints)
    : name_(std::move(name)),
      var_names_(std::move(var_names)),
      objective_(std::move(objective)),
      eq_(std::move(eq_constraints)),
      ineq_(std::move(ineq_constraints)) {
  const std::size_t n = var_names_.size();
  if (n == 0) throw ModelError("model has no variables");
  if (objective_.size() != n) throw ModelError("objective length differs from variable count");
  std::unordered_set<std::string> names;
  for (const auto& v : var_names_) {
    if (!names.insert(v).second) throw ModelError("duplicate variable name '" + v + "'");
  }
  for (double f : objective_) {
    if (!std::isfinite(f)) throw ModelError("non-finite objective coefficient");
  }
  for (const auto& c : eq_) validate_constraint(c, n, true);
  for (const auto& c : ineq_) validate_constraint(c, n, false);
}

std::size_t IlpModel::find_var(const std::string& name) const {
  for (std::size_t j = 0; j < var_names_.size(); ++j) {
    if (var_names_[j] == name) return j;
  }
  return var_names_.size();
}

NormalizedModel normalize(const IlpModel& model) {
  NormalizedModel nm;
  nm.num_vars = model.num_vars();
  nm.objective = model.objective();
  const auto& eq = model.eq_constraints();
  const auto& ineq = model.ineq_constraints();
  nm.rows.reserve(2 * eq.size() + ineq.size());

  for (std::size_t i = 0; i < eq.size(); ++i) {
    push_scaled(nm, eq[i], 1.0, {true, i, false});
    push_scaled(nm, eq[i], -1.0, {true, i, true});
  }
  for (std::size_t i = 0; i < ineq.size(); ++i) {
    const bool ge = ineq[i].relation == Relation::GE;
    push_scaled(nm, ineq[i], ge ? -1.0 : 1.0, {false, i, ge});
  }
  return nm;
}

double evaluate_objective(const IlpModel& model, std::span<const std::uint8_t> x) {
  check_dim(model, x);
  const auto& f = model.objective();
  double sum = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (x[j]) sum += f[j];
  }
  return sum;
}

Assignment make_assignment(const IlpModel& model, BinaryVector x) {
  const double obj = evaluate_objective(model, x);
  return {std::move(x), obj};
}

FeasibilityReport check_feasible(const IlpModel& model, std::span<const std::uint8_t> x,
                                 double tol) {
  check_dim(model, x);
  if (tol < 0.0) throw ModelError("feasibility tolerance must be nonnegative");
  FeasibilityReport report;
  auto scan = [&](const std::vector<LinearConstraint>& rows, bool from_eq) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& c = rows[i];
      const double amount = signed_violation(c, c.activity(x));
      if (violates(c, amount, tol)) {
        report.feasible = false;
        report.violations.push_back({c.name, {from_eq, i, false}, c.relation, amount});
      }
    }
  };
  scan(model.eq_constraints(), true);
  scan(model.ineq_constraints(), false);
  return report;
}

bool is_feasible(const IlpModel& model, std::span<const std::uint8_t> x, double tol) {
  check_dim(model, x);
  for (const auto* rows : {&model.eq_constraints(), &model.ineq_constraints()}) {
    for (const auto& c : *rows) {
      if (violates(c, signed_violation(c, c.activity(x)), tol)) return false;
    }
  }
  return true;
}

bool is_feasible(const NormalizedModel& nm, std::span<const std::uint8_t> x, double tol) {
  if (x.size() != nm.num_vars) throw ModelError("assignment length differs from model");
  for (const auto& row : nm.rows) {
    if (row.activity(x) - row.rhs > tol) return false;
  }
  return true;
}

}  // namespace memilp
