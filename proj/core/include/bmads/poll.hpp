#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "bmads/mesh.hpp"
#include "bmads/rng.hpp"
#include "bmads/types.hpp"

namespace bmads {

/// Orthogonal matrix I - 2 v v^T for a unit vector v, returned by columns.
std::vector<Point> householder_basis(std::span<const double> v);

/// 2n directions {+h_i, -h_i} built from the Householder basis of a random
/// unit vector. Each h_i is scaled so its largest component has magnitude
/// delta_poll. Directions are returned before any mesh rounding.
std::vector<Point> poll_directions(std::size_t n, double delta_poll, Rng& rng);

/// Predicate used to reject points already evaluated elsewhere.
using SeenPredicate = std::function<bool(std::span<const double>)>;

/// Poll candidates anchor + d for the 2n directions, projected onto the mesh.
/// Duplicates of the anchor, of each other, or of `seen` points are dropped.
std::vector<Point> poll_candidates(const MeshState& mesh, const Bounds& bounds, Rng& rng,
                                   const SeenPredicate& seen = {});

struct PadResult {
  std::vector<Point> points;
  bool short_block = false;  ///< not enough distinct mesh points could be found
};

/// Smallest multiple of q that is >= max(|points|, q).
std::size_t padded_size(std::size_t count, std::size_t q);

/// Adds single poll-distance directions, each taken from a fresh random
/// Householder basis, until the poll set reaches padded_size(|points|, q).
PadResult pad_poll(std::vector<Point> points, std::size_t q, const MeshState& mesh,
                   const Bounds& bounds, Rng& rng, const SeenPredicate& seen = {});

}  // namespace bmads
