#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bmads/rng.hpp"
#include "bmads/types.hpp"

namespace bmads {

/// Latin hypercube sample: for every coordinate, exactly one of the `count`
/// points falls in each stratum [l + k(u-l)/count, l + (k+1)(u-l)/count).
/// Bounds must be finite.
std::vector<Point> lhs_sample(const std::vector<double>& lower, const std::vector<double>& upper,
                              std::size_t count, Rng& rng);

std::vector<Point> lhs_sample(const std::vector<double>& lower, const std::vector<double>& upper,
                              std::size_t count, std::uint64_t seed);

}  // namespace bmads
