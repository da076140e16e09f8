#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bmads/lowess.hpp"
#include "bmads/mesh.hpp"
#include "bmads/selection.hpp"

namespace bmads {

struct SearchConfig {
  std::size_t inner_budget = 10000;
  double lhs_fraction = 0.30;
  double vns_fraction = 0.75;  ///< share of the post-LHS budget spent in restarts
  std::vector<int> method_cycle{3, 4, 5, 6};

  double inner_initial_poll = 0.1;
  double descent_min_poll = 1e-7;  ///< stopping poll size of the main descent
  double restart_min_poll = 1e-5;  ///< stopping poll size of each restart descent
  int restart_max_k = 5;

  std::size_t lhs_budget() const;
  std::size_t vns_budget() const;
  std::size_t poll_budget() const;
  /// Throws std::invalid_argument on out-of-range fractions or an empty cycle.
  void validate() const;
};

struct SurrogateSolveResult {
  SurrogateCacheView view;
  std::optional<SurrogatePoint> best_feasible;
  std::optional<SurrogatePoint> best_infeasible;
  std::size_t predictions = 0;
};

/// Minimizes the surrogate (f_hat, c_hat) over the bounds with an inner MADS:
/// LHS initialization, the given seed points, a poll descent from the best
/// point, then perturb-and-descend restarts. Every predicted point is kept
/// in the returned view in evaluation order; repeated points are stored
/// once and do not consume budget.
SurrogateSolveResult solve_surrogate(const LowessModel& model, const Bounds& bounds,
                                     std::span<const Point> seeds, const SearchConfig& config,
                                     std::uint64_t seed);

}  // namespace bmads
