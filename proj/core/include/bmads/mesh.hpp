#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bmads/types.hpp"

namespace bmads {

/// Box bounds in engine coordinates. A positive granularity forces the
/// coordinate onto lower + k * granularity (integer variables).
struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> granularity;

  std::size_t size() const { return lower.size(); }
  bool contains(std::span<const double> x) const;
  static Bounds unit_box(std::size_t n);
};

/// Mesh M = {anchor + delta_mesh * z, z integer} with poll size delta_poll.
struct MeshState {
  double delta_mesh = 1.0;
  double delta_poll = 1.0;
  Point anchor;

  bool valid() const { return delta_mesh > 0.0 && delta_poll >= delta_mesh; }

  /// Mesh size coupled to the poll size: min(delta_poll, delta_poll^2).
  static double mesh_size_for(double delta_poll);
  static MeshState initial(Point anchor, double delta_poll);
};

inline constexpr double kMeshUnderflow = 1e-13;
inline constexpr double kMaxPollSize = 1.0;

/// Snaps each coordinate to the nearest mesh node, then moves nodes that
/// fall outside the bounds to the closest node inside them.
Point project_to_mesh(std::span<const double> x, const MeshState& mesh, const Bounds& bounds);

enum class IterationOutcome {
  failure,
  search_success,  ///< success from a SEARCH candidate: poll size kept
  poll_success,    ///< success at full poll distance: poll size doubled
};

/// Failure halves the poll size; a poll success doubles it (capped at
/// kMaxPollSize). The mesh size always follows mesh_size_for.
MeshState update_mesh(const MeshState& mesh, IterationOutcome outcome);

bool mesh_underflow(const MeshState& mesh);

}  // namespace bmads
