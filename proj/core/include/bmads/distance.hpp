#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "bmads/types.hpp"

namespace bmads {

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

/// d(A, B) = min over pairs of the Euclidean norm; +inf when either set is empty.
double set_distance(const std::vector<Point>& a, const std::vector<Point>& b);

/// d(a, B) for a single point.
double point_set_distance(std::span<const double> a, const std::vector<Point>& b);

}  // namespace bmads
