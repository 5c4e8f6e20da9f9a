#include "memilp/exact.hpp"
#include "memilp/kernels.hpp"

namespace memilp::kernels {

EnumerationResult enumerate_serial(const ExactConstraintSet& set, EnumerationOrder order) {
  const std::uint64_t total = std::uint64_t{1} << set.num_vars();
  EnumerationResult r;
  r.enumerated = total;
  for (std::uint64_t k = 0; k < total; ++k) {
    const std::uint64_t mask = order == EnumerationOrder::Forward ? k : total - 1 - k;
    if (!set.feasible(mask)) continue;
    ++r.feasible_count;
    const double obj = set.objective(mask);
    if (!r.best || obj < *r.best || (obj == *r.best && mask < r.best_mask)) {
      r.best = obj;
      r.best_mask = mask;
    }
  }
  return r;
}

}  // namespace memilp::kernels
