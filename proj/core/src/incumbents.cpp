#include "bmads/incumbents.hpp"

namespace bmads {

const Evaluation* Incumbents::best() const {
  if (best_feasible) return &*best_feasible;
  if (best_infeasible) return &*best_infeasible;
  return nullptr;
}

IncumbentUpdate update_incumbents(const Incumbents& inc, std::span<const Evaluation> fresh) {
  IncumbentUpdate out{inc, false};
  const bool had_feasible = inc.best_feasible.has_value();
  for (const auto& e : fresh) {
    if (e.failed || !e.finite()) continue;
    if (had_feasible) {
      if (precedes(e, *inc.best_feasible)) out.success = true;
    } else if (inc.best_infeasible ? precedes(e, *inc.best_infeasible)
                                   : precedes(e, VirtualWorst{})) {
      out.success = true;
    }

    if (e.h == 0.0) {
      if (!out.incumbents.best_feasible || precedes(e, *out.incumbents.best_feasible))
        out.incumbents.best_feasible = e;
    } else if (!out.incumbents.best_infeasible || precedes(e, *out.incumbents.best_infeasible)) {
      out.incumbents.best_infeasible = e;
    }
  }
  return out;
}

}  // namespace bmads
