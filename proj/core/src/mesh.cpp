#include "bmads/mesh.hpp"

#include <algorithm>
#include <cmath>

namespace bmads {

bool Bounds::contains(std::span<const double> x) const {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  return true;
}

Bounds Bounds::unit_box(std::size_t n) {
  return Bounds{std::vector<double>(n, 0.0), std::vector<double>(n, 1.0),
                std::vector<double>(n, 0.0)};
}

double MeshState::mesh_size_for(double delta_poll) {
  return std::min(delta_poll, delta_poll * delta_poll);
}

MeshState MeshState::initial(Point anchor, double delta_poll) {
  return MeshState{mesh_size_for(delta_poll), delta_poll, std::move(anchor)};
}

namespace {

double snap_coordinate(double x, double anchor, double step, double lo, double hi, double grain) {
  double v = anchor + std::round((x - anchor) / step) * step;
  if (v > hi) {
    double k = std::floor((hi - anchor) / step);
    v = anchor + k * step;
    if (v > hi) v = anchor + (k - 1.0) * step;
  }
  if (v < lo) {
    double k = std::ceil((lo - anchor) / step);
    v = anchor + k * step;
    if (v < lo) v = anchor + (k + 1.0) * step;
  }
  // No mesh node inside [lo, hi]: fall back to the violated bound itself.
  if (v > hi || v < lo) v = std::clamp(x, lo, hi);
  if (grain > 0.0) {
    v = lo + std::round((v - lo) / grain) * grain;
    if (v > hi) v -= grain;
    v = std::max(v, lo);
  }
  return v;
}

}  // namespace

Point project_to_mesh(std::span<const double> x, const MeshState& mesh, const Bounds& bounds) {
  Point out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double grain = bounds.granularity.empty() ? 0.0 : bounds.granularity[i];
    out[i] = snap_coordinate(x[i], mesh.anchor[i], mesh.delta_mesh, bounds.lower[i],
                             bounds.upper[i], grain);
  }
  return out;
}

MeshState update_mesh(const MeshState& mesh, IterationOutcome outcome) {
  MeshState next = mesh;
  switch (outcome) {
    case IterationOutcome::failure:
      next.delta_poll = mesh.delta_poll / 2.0;
      break;
    case IterationOutcome::search_success:
      break;
    case IterationOutcome::poll_success:
      next.delta_poll = std::min(mesh.delta_poll * 2.0, kMaxPollSize);
      break;
  }
  next.delta_mesh = MeshState::mesh_size_for(next.delta_poll);
  return next;
}

bool mesh_underflow(const MeshState& mesh) { return mesh.delta_mesh < kMeshUnderflow; }

}  // namespace bmads
