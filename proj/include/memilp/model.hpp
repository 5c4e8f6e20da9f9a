#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace memilp {

/// Thrown when a model or an argument violates a structural contract
/// (dimension mismatch, bad index, non-finite coefficient).
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Relation { LE, GE, EQ };

const char* to_string(Relation rel);

struct Term {
  std::size_t var = 0;
  double coef = 0.0;

  friend bool operator==(const Term&, const Term&) = default;
};

struct LinearConstraint {
  std::vector<Term> terms;
  Relation relation = Relation::LE;
  double rhs = 0.0;
  std::string name;

  double activity(std::span<const std::uint8_t> x) const;

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

using BinaryVector = std::vector<std::uint8_t>;

/// Binary ILP in minimization form:
///   min f.x  s.t.  A_eq x = b_eq,  A_ineq x {<=,>=} b_ineq,  x in {0,1}^n.
class IlpModel {
 public:
  IlpModel() = default;

  /// Validates every invariant; throws ModelError on violation.
  IlpModel(std::string name, std::vector<std::string> var_names, std::vector<double> objective,
           std::vector<LinearConstraint> eq_constraints,
           std::vector<LinearConstraint> ineq_constraints);

  const std::string& name() const { return name_; }
  std::size_t num_vars() const { return var_names_.size(); }
  std::size_t num_eq() const { return eq_.size(); }
  std::size_t num_ineq() const { return ineq_.size(); }

  const std::vector<std::string>& var_names() const { return var_names_; }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<LinearConstraint>& eq_constraints() const { return eq_; }
  const std::vector<LinearConstraint>& ineq_constraints() const { return ineq_; }

  /// Index of a variable by name, or num_vars() when absent.
  std::size_t find_var(const std::string& name) const;

  friend bool operator==(const IlpModel&, const IlpModel&) = default;

 private:
  std::string name_;
  std::vector<std::string> var_names_;
  std::vector<double> objective_;
  std::vector<LinearConstraint> eq_;
  std::vector<LinearConstraint> ineq_;
};

struct RowOrigin {
  bool from_eq = false;
  std::size_t index = 0;  // into eq_constraints() or ineq_constraints()
  bool negated = false;

  friend bool operator==(const RowOrigin&, const RowOrigin&) = default;
};

/// Canonical all-"<=" form with every coefficient in [-1, 1].
struct NormalizedModel {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<LinearConstraint> rows;
  std::vector<double> row_scale;
  std::vector<RowOrigin> origin;
};

struct Assignment {
  BinaryVector values;
  double objective_value = 0.0;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct Violation {
  std::string name;
  RowOrigin source;  // negated is unused here
  Relation relation = Relation::LE;
  /// Positive means violated: a.x - b for LE, b - a.x for GE, a.x - b for EQ (signed).
  double amount = 0.0;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<Violation> violations;
};

inline constexpr double kDefaultFeasibilityTol = 1e-6;

/// Smallest power of two >= max(1, max_abs). Dividing by it is exact.
double scale_for(double max_abs);

NormalizedModel normalize(const IlpModel& model);

double evaluate_objective(const IlpModel& model, std::span<const std::uint8_t> x);

Assignment make_assignment(const IlpModel& model, BinaryVector x);

FeasibilityReport check_feasible(const IlpModel& model, std::span<const std::uint8_t> x,
                                 double tol = kDefaultFeasibilityTol);

/// Same verdict as check_feasible(...).feasible, stops at the first violated row.
bool is_feasible(const IlpModel& model, std::span<const std::uint8_t> x,
                 double tol = kDefaultFeasibilityTol);

/// Feasibility of x against the normalized rows (all LE).
bool is_feasible(const NormalizedModel& nm, std::span<const std::uint8_t> x,
                 double tol = kDefaultFeasibilityTol);

}  // namespace memilp
