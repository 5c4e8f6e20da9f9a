#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "memilp/kernels.hpp"
#include "memilp/model.hpp"
#include "memilp/mps_io.hpp"

namespace memilp {

class VerifyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// (O_best - O_lb) / |O_best|. Throws VerifyError when O_best == 0.
double gap(double best, double lower_bound);

/// sum_j min(f_j, 0): the optimum with every constraint dropped.
double trivial_lower_bound(std::span<const double> f);

struct BoundsReport {
  double trivial_bound = 0.0;
  std::optional<double> external_lp_bound;
  double best_known_lb = 0.0;
};

BoundsReport make_bounds(std::span<const double> f, std::optional<double> external_lp_bound);

struct OracleResult {
  std::optional<double> optimum;
  std::optional<BinaryVector> arg_optimum;
  std::uint64_t feasible_count = 0;
  std::uint64_t enumerated = 0;
};

inline constexpr std::size_t kDefaultOracleMaxVars = 24;

/// Exhaustive minimum over all 2^n assignments, feasibility at tolerance 0.
/// Ties resolve to the assignment with the smallest bit mask (bit j = x_j).
OracleResult brute_force(const IlpModel& model, std::size_t max_vars = kDefaultOracleMaxVars,
                         ExecPolicy policy = ExecPolicy::Auto);

struct SolutionVerdict {
  bool feasible = false;
  Assignment assignment;
  std::optional<double> declared_objective;
  bool objective_matches = true;
  std::vector<Violation> violated_rows;
  std::vector<std::string> non_integral;  // variables whose value is not 0/1
  std::vector<std::string> warnings;
};

inline constexpr double kDeclaredObjectiveRelTol = 1e-4;

/// Rebuilds the assignment named in `sol` (missing variables default to 0),
/// checks it against `model` and compares the declared objective.
/// Throws VerifyError on a variable name unknown to the model.
SolutionVerdict check_solution_file(const IlpModel& model, const SolFile& sol,
                                    double tol = kDefaultFeasibilityTol);

/// "key: value" lines: feasible, objective, declared_objective, objective_match,
/// violated_rows, non_integral, gap.
std::string format_verdict(const SolutionVerdict& verdict, std::optional<double> lower_bound);

}  // namespace memilp
