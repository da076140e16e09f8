#include <benchmark/benchmark.h>

#include "bmads/rng.hpp"
#include "bmads/selection.hpp"

using namespace bmads;

namespace {

SurrogateCacheView random_view(std::size_t size, std::size_t n) {
  Rng rng(3);
  SurrogateCacheView v(n);
  for (std::size_t k = 0; k < size; ++k) {
    Point x(n);
    for (auto& c : x) c = rng.uniform();
    v.add(make_surrogate_point(x, std::vector<double>{rng.uniform(), rng.uniform() - 0.7}));
  }
  return v;
}

void BM_CycleSelect(benchmark::State& state) {
  const auto view = random_view(static_cast<std::size_t>(state.range(0)), 4);
  const std::vector<Point> evaluated{{0.5, 0.5, 0.5, 0.5}};
  const int cycle[] = {3, 4, 5, 6};
  for (auto _ : state) {
    SelectionState st;
    benchmark::DoNotOptimize(cycle_select(view, evaluated, 16, cycle, st, 1e-4));
  }
}
BENCHMARK(BM_CycleSelect)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
