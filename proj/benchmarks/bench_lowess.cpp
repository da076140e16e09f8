#include <benchmark/benchmark.h>

#include "bmads/lhs.hpp"
#include "bmads/lowess.hpp"
#include "bmads/problems.hpp"

using namespace bmads;

namespace {

// Welded-beam training set of p points in the unit box.
void training_set(std::size_t p, std::vector<Point>& x, std::vector<std::vector<double>>& y) {
  const auto e = make_welded();
  x = lhs_sample(std::vector<double>(4, 0.0), std::vector<double>(4, 1.0), p, std::uint64_t{7});
  y.clear();
  for (const auto& u : x) {
    Point v(4);
    for (int i = 0; i < 4; ++i) v[i] = e.spec.lower[i] + u[i] * (e.spec.upper[i] - e.spec.lower[i]);
    const auto out = eval_welded(v);
    std::vector<double> row{out.f};
    row.insert(row.end(), out.c.begin(), out.c.end());
    y.push_back(std::move(row));
  }
}

void BM_Predict(benchmark::State& state) {
  std::vector<Point> x;
  std::vector<std::vector<double>> y;
  training_set(static_cast<std::size_t>(state.range(0)), x, y);
  LowessModel m(x, y, 1.0, KernelType::TriCubic);
  const Point xi{0.4, 0.5, 0.6, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(m.predict(xi));
}
BENCHMARK(BM_Predict)->Arg(50)->Arg(200)->Arg(500);

void BM_Fit(benchmark::State& state) {
  std::vector<Point> x;
  std::vector<std::vector<double>> y;
  training_set(static_cast<std::size_t>(state.range(0)), x, y);
  for (auto _ : state) benchmark::DoNotOptimize(fit_lowess(x, y));
}
BENCHMARK(BM_Fit)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
