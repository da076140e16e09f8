#pragma once

#include <span>
#include <vector>

#include "bmads/mesh.hpp"
#include "bmads/types.hpp"

namespace bmads {

/// Diagonal map from problem coordinates to the engine's unit box.
///
/// Variable i maps to (x_i - offset_i) / range_i. Finite bounds give the
/// exact [0, 1] box; an infinite upper bound uses the range guess
/// [lower, lower + kUnboundedRange] for scaling only.
class Scaling {
 public:
  static constexpr double kUnboundedRange = 1000.0;

  explicit Scaling(const ProblemSpec& spec);

  Point to_unit(std::span<const double> x) const;
  Point from_unit(std::span<const double> u) const;

  /// Bounds in engine coordinates (integer variables get granularity 1/range).
  const Bounds& unit_bounds() const { return bounds_; }

  /// Box used for sampling: the bounds with infinite sides replaced by the range guess.
  std::vector<double> sample_lower() const;
  std::vector<double> sample_upper() const;

 private:
  std::vector<double> offset_;
  std::vector<double> range_;
  Bounds bounds_;
};

}  // namespace bmads
