#include "bmads/rng.hpp"

#include <cmath>

namespace bmads {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng Rng::derive(std::uint64_t seed, std::string_view purpose, std::uint64_t index) {
  // FNV-1a over the purpose label.
  std::uint64_t tag = 0xcbf29ce484222325ULL;
  for (unsigned char ch : purpose) {
    tag ^= ch;
    tag *= 0x100000001b3ULL;
  }
  std::uint64_t state = seed;
  std::uint64_t mixed = splitmix64(state) ^ tag;
  state = mixed;
  mixed = splitmix64(state) ^ index;
  state = mixed;
  return Rng(splitmix64(state));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % n;
}

std::vector<double> Rng::unit_direction(std::size_t n) {
  std::vector<double> v(n);
  for (;;) {
    double s = 0.0;
    for (auto& vi : v) {
      vi = uniform(-1.0, 1.0);
      s += vi * vi;
    }
    if (s > 1e-12 && s <= 1.0) {
      const double norm = std::sqrt(s);
      for (auto& vi : v) vi /= norm;
      return v;
    }
  }
}

std::vector<double> Rng::in_ball(std::size_t n, double r) {
  if (n > 6) {
    // Cube rejection becomes too wasteful in higher dimension.
    auto v = unit_direction(n);
    const double radius = r * std::pow(uniform(), 1.0 / static_cast<double>(n));
    for (auto& vi : v) vi *= radius;
    return v;
  }
  std::vector<double> v(n);
  for (;;) {
    double s = 0.0;
    for (auto& vi : v) {
      vi = uniform(-1.0, 1.0);
      s += vi * vi;
    }
    if (s <= 1.0) {
      for (auto& vi : v) vi *= r;
      return v;
    }
  }
}

}  // namespace bmads
