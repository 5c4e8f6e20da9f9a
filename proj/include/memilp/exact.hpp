#pragma once

#include <cstdint>
#include <vector>

#include "memilp/model.hpp"

namespace memilp {

/// Constraint rows prepared for exhaustive enumeration over at most 63
/// variables. Rows whose data become integers after scaling by a power of ten
/// are evaluated in 64-bit integer arithmetic, so feasibility at tolerance 0
/// is decided exactly; other rows fall back to double arithmetic.
class ExactConstraintSet {
 public:
  explicit ExactConstraintSet(const IlpModel& model);

  std::size_t num_vars() const { return n_; }
  std::size_t num_exact_rows() const { return exact_rows_.size(); }
  std::size_t num_inexact_rows() const { return inexact_rows_.size(); }

  /// Feasibility of the assignment whose bit j is x_j, at tolerance 0.
  bool feasible(std::uint64_t mask) const;
  /// sum_j f_j x_j accumulated in index order (same as evaluate_objective).
  double objective(std::uint64_t mask) const;

 private:
  struct ExactRow {
    std::vector<std::pair<std::uint32_t, std::int64_t>> terms;
    std::int64_t rhs = 0;
    Relation relation = Relation::LE;
  };
  struct InexactRow {
    std::vector<std::pair<std::uint32_t, double>> terms;
    double rhs = 0.0;
    Relation relation = Relation::LE;
  };

  std::size_t n_ = 0;
  std::vector<double> objective_;
  std::vector<ExactRow> exact_rows_;
  std::vector<InexactRow> inexact_rows_;
};

BinaryVector mask_to_vector(std::uint64_t mask, std::size_t n);

}  // namespace memilp
