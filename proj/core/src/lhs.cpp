#include "bmads/lhs.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bmads {

std::vector<Point> lhs_sample(const std::vector<double>& lower, const std::vector<double>& upper,
                              std::size_t count, Rng& rng) {
  const std::size_t n = lower.size();
  if (upper.size() != n) throw std::invalid_argument("lhs_sample: bound size mismatch");
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
      throw std::invalid_argument("lhs_sample: bounds must be finite");

  std::vector<Point> pts(count, Point(n));
  std::vector<std::size_t> perm(count);
  const double c = static_cast<double>(count);
  for (std::size_t i = 0; i < n; ++i) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(perm));
    const double width = upper[i] - lower[i];
    for (std::size_t k = 0; k < count; ++k) {
      const double u = (static_cast<double>(perm[k]) + rng.uniform()) / c;
      double v = lower[i] + u * width;
      // Rounding can push the last stratum onto the upper bound.
      const double stratum_top = lower[i] + (static_cast<double>(perm[k]) + 1.0) / c * width;
      if (v >= stratum_top && width > 0.0) v = std::nextafter(stratum_top, lower[i]);
      pts[k][i] = v;
    }
  }
  return pts;
}

std::vector<Point> lhs_sample(const std::vector<double>& lower, const std::vector<double>& upper,
                              std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  return lhs_sample(lower, upper, count, rng);
}

}  // namespace bmads
