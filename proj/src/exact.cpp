#include "memilp/exact.hpp"

#include <cmath>
#include <optional>

namespace memilp {

namespace {

constexpr int kMaxDecimalShift = 9;
// Keeps |sum of terms| far from int64 overflow for any n <= 63.
constexpr double kMaxScaledMagnitude = 1e15;

std::optional<std::int64_t> as_integer(double value) {
  const double r = std::nearbyint(value);
  if (std::abs(r) > kMaxScaledMagnitude) return std::nullopt;
  if (std::abs(value - r) > 1e-9 * std::max(1.0, std::abs(value))) return std::nullopt;
  return static_cast<std::int64_t>(r);
}

}  // namespace

ExactConstraintSet::ExactConstraintSet(const IlpModel& model)
    : n_(model.num_vars()), objective_(model.objective()) {
  if (n_ > 63) throw ModelError("exhaustive enumeration supports at most 63 variables");

  for (const auto* rows : {&model.eq_constraints(), &model.ineq_constraints()}) {
    for (const auto& c : *rows) {
      bool placed = false;
      double factor = 1.0;
      for (int k = 0; k <= kMaxDecimalShift && !placed; ++k, factor *= 10.0) {
        ExactRow row;
        row.relation = c.relation;
        auto rhs = as_integer(c.rhs * factor);
        if (!rhs) continue;
        row.rhs = *rhs;
        bool ok = true;
        for (const auto& t : c.terms) {
          auto a = as_integer(t.coef * factor);
          if (!a) {
            ok = false;
            break;
          }
          row.terms.emplace_back(static_cast<std::uint32_t>(t.var), *a);
        }
        if (ok) {
          exact_rows_.push_back(std::move(row));
          placed = true;
        }
      }
      if (!placed) {
        InexactRow row;
        row.relation = c.relation;
        row.rhs = c.rhs;
        for (const auto& t : c.terms) row.terms.emplace_back(static_cast<std::uint32_t>(t.var), t.coef);
        inexact_rows_.push_back(std::move(row));
      }
    }
  }
}

bool ExactConstraintSet::feasible(std::uint64_t mask) const {
  for (const auto& row : exact_rows_) {
    std::int64_t sum = 0;
    for (const auto& [j, a] : row.terms) {
      if ((mask >> j) & 1U) sum += a;
    }
    const bool ok = row.relation == Relation::LE   ? sum <= row.rhs
                    : row.relation == Relation::GE ? sum >= row.rhs
                                                   : sum == row.rhs;
    if (!ok) return false;
  }
  for (const auto& row : inexact_rows_) {
    double sum = 0.0;
    for (const auto& [j, a] : row.terms) {
      if ((mask >> j) & 1U) sum += a;
    }
    const bool ok = row.relation == Relation::LE   ? sum <= row.rhs
                    : row.relation == Relation::GE ? sum >= row.rhs
                                                   : sum == row.rhs;
    if (!ok) return false;
  }
  return true;
}

double ExactConstraintSet::objective(std::uint64_t mask) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    if ((mask >> j) & 1U) sum += objective_[j];
  }
  return sum;
}

BinaryVector mask_to_vector(std::uint64_t mask, std::size_t n) {
  BinaryVector x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = static_cast<std::uint8_t>((mask >> j) & 1U);
  return x;
}

}  // namespace memilp
