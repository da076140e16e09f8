#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bmads/types.hpp"

namespace bmads {

/// Tension/compression spring: x = (wire diameter, mean coil diameter, active coils).
BlackboxOutput eval_tcsd(std::span<const double> x);

/// Pressure vessel: x = (shell thickness, head thickness, inner radius, length).
BlackboxOutput eval_vessel(std::span<const double> x);

/// Welded beam, version I: x = (weld thickness, weld length, beam width, beam thickness).
BlackboxOutput eval_welded(std::span<const double> x);

struct ProblemCatalogEntry {
  ProblemSpec spec;
  double best_known_f = 0.0;
  Point best_known_x;
};

ProblemCatalogEntry make_tcsd();
ProblemCatalogEntry make_vessel();
ProblemCatalogEntry make_welded();

/// Looks up "tcsd", "vessel" or "welded".
std::optional<ProblemCatalogEntry> find_problem(std::string_view name);
std::vector<std::string> problem_names();

}  // namespace bmads
