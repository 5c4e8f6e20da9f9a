#include <limits>

#include "memilp/exact.hpp"
#include "memilp/kernels.hpp"

namespace memilp::kernels {

EnumerationResult enumerate_omp(const ExactConstraintSet& set) {
  const auto total = static_cast<std::int64_t>(std::uint64_t{1} << set.num_vars());
  std::uint64_t feasible = 0;
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_mask = std::numeric_limits<std::uint64_t>::max();

#pragma omp parallel
  {
    std::uint64_t local_count = 0;
    double local_best = std::numeric_limits<double>::infinity();
    std::uint64_t local_mask = std::numeric_limits<std::uint64_t>::max();
#pragma omp for schedule(static) nowait
    for (std::int64_t k = 0; k < total; ++k) {
      const auto mask = static_cast<std::uint64_t>(k);
      if (!set.feasible(mask)) continue;
      ++local_count;
      const double obj = set.objective(mask);
      if (obj < local_best || (obj == local_best && mask < local_mask)) {
        local_best = obj;
        local_mask = mask;
      }
    }
#pragma omp critical(memilp_enumerate_merge)
    {
      feasible += local_count;
      if (local_count > 0 && (local_best < best || (local_best == best && local_mask < best_mask))) {
        best = local_best;
        best_mask = local_mask;
      }
    }
  }

  EnumerationResult r;
  r.enumerated = static_cast<std::uint64_t>(total);
  r.feasible_count = feasible;
  if (feasible > 0) {
    r.best = best;
    r.best_mask = best_mask;
  }
  return r;
}

}  // namespace memilp::kernels
