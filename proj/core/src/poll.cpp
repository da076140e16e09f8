#include "bmads/poll.hpp"

#include <algorithm>
#include <cmath>

#include "bmads/cache.hpp"

namespace bmads {

std::vector<Point> householder_basis(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<Point> cols(n, Point(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) cols[j][i] = (i == j ? 1.0 : 0.0) - 2.0 * v[i] * v[j];
  return cols;
}

namespace {

Point scale_to_poll(const Point& h, double delta_poll) {
  double inf_norm = 0.0;
  for (double v : h) inf_norm = std::max(inf_norm, std::abs(v));
  Point d(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) d[i] = delta_poll * h[i] / inf_norm;
  return d;
}

Point offset(std::span<const double> anchor, const Point& d) {
  Point x(anchor.begin(), anchor.end());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += d[i];
  return x;
}

}  // namespace

std::vector<Point> poll_directions(std::size_t n, double delta_poll, Rng& rng) {
  const auto basis = householder_basis(rng.unit_direction(n));
  std::vector<Point> dirs;
  dirs.reserve(2 * n);
  for (const auto& h : basis) {
    Point d = scale_to_poll(h, delta_poll);
    Point neg(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) neg[i] = -d[i];
    dirs.push_back(std::move(d));
    dirs.push_back(std::move(neg));
  }
  return dirs;
}

std::vector<Point> poll_candidates(const MeshState& mesh, const Bounds& bounds, Rng& rng,
                                   const SeenPredicate& seen) {
  const std::size_t n = mesh.anchor.size();
  std::vector<Point> out;
  CoordinateEqual same;
  for (const auto& d : poll_directions(n, mesh.delta_poll, rng)) {
    Point x = project_to_mesh(offset(mesh.anchor, d), mesh, bounds);
    if (same(x, mesh.anchor)) continue;
    if (seen && seen(x)) continue;
    if (std::any_of(out.begin(), out.end(), [&](const Point& y) { return same(x, y); })) continue;
    out.push_back(std::move(x));
  }
  return out;
}

std::size_t padded_size(std::size_t count, std::size_t q) {
  if (q == 0) return count;
  const std::size_t base = std::max(count, q);
  return (base + q - 1) / q * q;
}

PadResult pad_poll(std::vector<Point> points, std::size_t q, const MeshState& mesh,
                   const Bounds& bounds, Rng& rng, const SeenPredicate& seen) {
  const std::size_t target = padded_size(points.size(), q);
  const std::size_t n = mesh.anchor.size();
  CoordinateEqual same;
  std::size_t attempts = 0;
  const std::size_t max_attempts = 50 * (target - points.size()) + 100;
  while (points.size() < target && attempts < max_attempts) {
    ++attempts;
    const auto basis = householder_basis(rng.unit_direction(n));
    const auto& h = basis[rng.below(n)];
    Point d = scale_to_poll(h, mesh.delta_poll);
    if (rng.below(2) == 1)
      for (auto& v : d) v = -v;
    Point x = project_to_mesh(offset(mesh.anchor, d), mesh, bounds);
    if (same(x, mesh.anchor)) continue;
    if (seen && seen(x)) continue;
    if (std::any_of(points.begin(), points.end(), [&](const Point& y) { return same(x, y); }))
      continue;
    points.push_back(std::move(x));
  }
  PadResult r;
  r.short_block = points.size() < target;
  r.points = std::move(points);
  return r;
}

}  // namespace bmads
