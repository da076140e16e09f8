#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace bmads {

std::uint64_t splitmix64(std::uint64_t& state);

/// Portable random stream.
///
/// The engine is std::mt19937_64 (its output sequence is fixed by the
/// standard); all derived variates are computed here rather than through
/// <random> distributions, whose algorithms vary between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Independent substream keyed by (seed, purpose, index).
  static Rng derive(std::uint64_t seed, std::string_view purpose, std::uint64_t index = 0);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform direction on the unit sphere of dimension n.
  std::vector<double> unit_direction(std::size_t n);
  /// Uniform point in the ball of radius r centered at the origin.
  std::vector<double> in_ball(std::size_t n, double r);

  template <class T>
  void shuffle(std::span<T> v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bmads
