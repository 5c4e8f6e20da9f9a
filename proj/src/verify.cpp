#include "memilp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "memilp/exact.hpp"

namespace memilp {

double gap(double best, double lower_bound) {
  if (best == 0.0) throw VerifyError("gap is undefined when the best objective is 0");
  return (best - lower_bound) / std::abs(best);
}

double trivial_lower_bound(std::span<const double> f) {
  double sum = 0.0;
  for (double c : f) sum += std::min(c, 0.0);
  return sum;
}

BoundsReport make_bounds(std::span<const double> f, std::optional<double> external_lp_bound) {
  BoundsReport b;
  b.trivial_bound = trivial_lower_bound(f);
  b.external_lp_bound = external_lp_bound;
  b.best_known_lb = external_lp_bound ? std::max(b.trivial_bound, *external_lp_bound) : b.trivial_bound;
  return b;
}

OracleResult brute_force(const IlpModel& model, std::size_t max_vars, ExecPolicy policy) {
  if (model.num_vars() > max_vars) {
    throw VerifyError("brute force limited to " + std::to_string(max_vars) + " variables, model has " +
                      std::to_string(model.num_vars()));
  }
  const ExactConstraintSet set(model);
  const bool parallel = policy == ExecPolicy::Parallel ||
                        (policy == ExecPolicy::Auto && model.num_vars() >= 16);
  const auto e = parallel ? kernels::enumerate_omp(set) : kernels::enumerate_serial(set);

  OracleResult r;
  r.feasible_count = e.feasible_count;
  r.enumerated = e.enumerated;
  if (e.best) {
    r.optimum = e.best;
    r.arg_optimum = mask_to_vector(e.best_mask, model.num_vars());
  }
  return r;
}

SolutionVerdict check_solution_file(const IlpModel& model, const SolFile& sol, double tol) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t j = 0; j < model.num_vars(); ++j) index.emplace(model.var_names()[j], j);

  SolutionVerdict v;
  BinaryVector x(model.num_vars(), 0);
  std::vector<bool> named(model.num_vars(), false);
  for (const auto& e : sol.entries) {
    auto it = index.find(e.name);
    if (it == index.end()) throw VerifyError("solution names unknown variable '" + e.name + "'");
    named[it->second] = true;
    if (!e.integral) {
      v.non_integral.push_back(e.name);
    } else {
      x[it->second] = e.value == 1.0 ? 1 : 0;
    }
  }
  std::size_t missing = static_cast<std::size_t>(std::count(named.begin(), named.end(), false));
  if (missing > 0) {
    v.warnings.push_back(std::to_string(missing) + " model variable(s) absent from the solution; taken as 0");
  }

  const auto report = check_feasible(model, x, tol);
  v.assignment = make_assignment(model, std::move(x));
  v.violated_rows = report.violations;
  v.feasible = report.feasible && v.non_integral.empty();
  v.declared_objective = sol.declared_objective;
  if (sol.declared_objective) {
    const double obj = v.assignment.objective_value;
    v.objective_matches =
        std::abs(*sol.declared_objective - obj) <= kDeclaredObjectiveRelTol * std::max(1.0, std::abs(obj));
  }
  return v;
}

std::string format_verdict(const SolutionVerdict& verdict, std::optional<double> lower_bound) {
  std::ostringstream out;
  out.precision(17);
  out << "feasible: " << (verdict.feasible ? "yes" : "no") << '\n';
  out << "objective: " << format_real(verdict.assignment.objective_value) << '\n';
  out << "declared_objective: "
      << (verdict.declared_objective ? format_real(*verdict.declared_objective) : std::string("n/a")) << '\n';
  out << "objective_match: " << (verdict.objective_matches ? "yes" : "no") << '\n';
  out << "violated_rows:";
  if (verdict.violated_rows.empty()) out << " none";
  for (std::size_t k = 0; k < verdict.violated_rows.size(); ++k) {
    out << (k == 0 ? " " : ",") << verdict.violated_rows[k].name << '('
        << format_real(verdict.violated_rows[k].amount) << ')';
  }
  out << '\n';
  out << "non_integral:";
  if (verdict.non_integral.empty()) out << " none";
  for (std::size_t k = 0; k < verdict.non_integral.size(); ++k) {
    out << (k == 0 ? " " : ",") << verdict.non_integral[k];
  }
  out << '\n';
  out << "gap: ";
  const double best = verdict.assignment.objective_value;
  if (lower_bound && best != 0.0) {
    out << format_real(gap(best, *lower_bound));
    if (best < 0.0) out << " (negative objective: |O_best| denominator)";
  } else {
    out << "n/a";
  }
  out << '\n';
  for (const auto& w : verdict.warnings) out << "warning: " << w << '\n';
  return out.str();
}

}  // namespace memilp
