#pragma once

#include <optional>
#include <span>

#include "bmads/types.hpp"

namespace bmads {

struct Incumbents {
  std::optional<Evaluation> best_feasible;
  std::optional<Evaluation> best_infeasible;  ///< minimal h among 0 < h < inf, ties by f

  /// Best point overall under precedes: the feasible incumbent if any.
  const Evaluation* best() const;
};

struct IncumbentUpdate {
  Incumbents incumbents;
  bool success = false;
};

/// Folds new evaluations into the incumbents. Success means a new point
/// strictly precedes the feasible incumbent or, while no feasible point
/// exists, strictly precedes the infeasible one.
IncumbentUpdate update_incumbents(const Incumbents& inc, std::span<const Evaluation> fresh);

}  // namespace bmads
