#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bmads/rng.hpp"
#include "bmads/selection.hpp"
#include "selection_reference.hpp"

namespace fixtures {

struct SelectionFixture {
  bmads::SurrogateCacheView view;
  std::vector<bmads::Point> evaluated;
  double delta_mesh = 0.1;
  std::vector<int> calls;  // method sequence to replay
};

// Coordinates and outputs are drawn from coarse grids so that ties in
// distances, f and h are common; some predictions fail.
inline SelectionFixture random_selection_fixture(std::uint64_t seed) {
  bmads::Rng rng = bmads::Rng::derive(seed, "selection-fixture");
  SelectionFixture fx;
  const std::size_t n = 1 + rng.below(4);
  const std::size_t size = 1 + rng.below(200);
  const std::size_t m = rng.below(3);
  const double grid = static_cast<double>(2 + rng.below(6));
  fx.view = bmads::SurrogateCacheView(n);
  std::vector<bmads::Point> pts;
  for (std::size_t k = 0; k < size; ++k) {
    bmads::Point x(n);
    for (auto& v : x) v = static_cast<double>(rng.below(static_cast<std::uint64_t>(grid) + 1)) / grid;
    pts.push_back(x);
    std::optional<std::vector<double>> y;
    if (rng.below(20) != 0) {
      std::vector<double> out(m + 1);
      out[0] = static_cast<double>(rng.below(8)) - 2.0;
      for (std::size_t j = 1; j <= m; ++j) out[j] = (static_cast<double>(rng.below(9)) - 5.0) / 4.0;
      y = out;
    }
    fx.view.add(bmads::make_surrogate_point(x, y));
  }
  const std::size_t nx = rng.below(6);
  for (std::size_t k = 0; k < nx; ++k) {
    if (rng.below(2) == 0) {
      fx.evaluated.push_back(pts[rng.below(pts.size())]);
    } else {
      bmads::Point x(n);
      for (auto& v : x) v = rng.uniform();
      fx.evaluated.push_back(x);
    }
  }
  const double deltas[] = {0.0, 1e-3, 0.05, 0.25, 0.5};
  fx.delta_mesh = deltas[rng.below(5)];
  const std::size_t ncalls = 1 + rng.below(12);
  for (std::size_t k = 0; k < ncalls; ++k) fx.calls.push_back(1 + static_cast<int>(rng.below(6)));
  return fx;
}

// Replays the fixture's call sequence on both implementations. Returns an
// empty string on agreement, otherwise a description of the first mismatch.
inline std::string compare_selection(const SelectionFixture& fx) {
  bmads::CandidateSelector sel(fx.view, fx.evaluated);
  ref::Selector brute(fx.view, fx.evaluated);
  bmads::SelectionState state;
  for (std::size_t k = 0; k < fx.calls.size(); ++k) {
    const int method = fx.calls[k];
    const auto got = sel.apply(method, state, fx.delta_mesh);
    const auto want = brute.apply(method, fx.delta_mesh);
    if (got != want) {
      auto show = [](const std::optional<std::size_t>& v) {
        return v ? std::to_string(*v) : std::string("none");
      };
      return "call " + std::to_string(k) + " method " + std::to_string(method) + ": got " +
             show(got) + ", reference " + show(want);
    }
  }
  return {};
}

}  // namespace fixtures
