#include <gtest/gtest.h>

#include <vector>

#include "bmads/selection.hpp"
#include "selection_fixtures.hpp"
#include "selection_reference.hpp"

using namespace bmads;

namespace {

// 1-D view; each entry is (x, f, c) with a single constraint, or (x, f) unconstrained.
SurrogateCacheView line_view(const std::vector<double>& xs, const std::vector<double>& fs,
                             const std::vector<double>& cs = {}) {
  SurrogateCacheView v(1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<double> y{fs[i]};
    if (!cs.empty()) y.push_back(cs[i]);
    v.add(make_surrogate_point({xs[i]}, y));
  }
  return v;
}

using Opt = std::optional<std::size_t>;

}  // namespace

TEST(SurrogatePoint, FailedPredictionIsWorst) {
  const auto bad = make_surrogate_point({0.0}, std::nullopt);
  EXPECT_TRUE(bad.failed);
  EXPECT_EQ(bad.f, kInf);
  const auto ok = make_surrogate_point({0.0}, std::vector<double>{1.0, 0.5, -2.0});
  EXPECT_EQ(ok.h, 0.25);
  EXPECT_EQ(ok.cmax, 0.5);
  EXPECT_TRUE(surrogate_precedes(ok, bad));
  EXPECT_EQ(make_surrogate_point({0.0}, std::vector<double>{1.0}).cmax, -kInf);
}

TEST(Method1, BestUnevaluatedPoint) {
  const auto v = line_view({0.0, 1.0, 2.0}, {1.0, 2.0, 3.0});
  CandidateSelector a(v, {});
  EXPECT_EQ(a.method1(), Opt(0));
  // best point already evaluated: second best
  CandidateSelector b(v, {{0.0}});
  EXPECT_EQ(b.method1(), Opt(1));
  EXPECT_EQ(b.method1(), Opt(2));
  EXPECT_EQ(b.method1(), std::nullopt);
}

TEST(Method2, FarthestPoint) {
  const auto v = line_view({0.1, 5.0, 2.0}, {0.0, 0.0, 0.0});
  CandidateSelector s(v, {{0.0}});
  EXPECT_EQ(s.method2(), Opt(1));
  EXPECT_EQ(s.method2(), Opt(2));
  const auto one = line_view({0.0}, {0.0});
  CandidateSelector dup(one, {{0.0}});
  EXPECT_EQ(dup.method2(), std::nullopt);
}

TEST(Method3, DistanceCursor) {
  // the better point lies at distance 0.5, the other at 2.0
  const auto v = line_view({0.5, 2.0}, {1.0, 2.0});
  CandidateSelector s(v, {{0.0}});
  SelectionState st;
  st.d_min = 1.0;
  st.distance_initialized = true;
  EXPECT_EQ(s.method3(st, 0.25), Opt(1));
  EXPECT_EQ(st.d_min, 1.25);

  CandidateSelector first(v, {{0.0}});
  SelectionState fresh;
  EXPECT_EQ(first.method3(fresh, 0.25), Opt(0));
  EXPECT_EQ(fresh.d_min, 0.25);

  SelectionState far;
  far.d_min = 100.0;
  far.distance_initialized = true;
  CandidateSelector none(v, {{0.0}});
  EXPECT_EQ(none.method3(far, 0.25), std::nullopt);
  EXPECT_EQ(far.d_min, 100.0);
}

TEST(Method3, ExcludesDuplicatesOnFirstCall) {
  const auto v = line_view({0.0, 1.0}, {1.0, 2.0});
  CandidateSelector s(v, {{0.0}});
  SelectionState st;
  EXPECT_EQ(s.method3(st, 0.1), Opt(1));
}

TEST(Method4, MarginFixture) {
  const auto v = line_view({1.0, 2.0, 3.0}, {1.0, 2.0, 0.5}, {-0.1, -0.4, 0.3});
  CandidateSelector s(v, {{0.0}});
  SelectionState st;
  EXPECT_EQ(s.method4(st, 0.1), Opt(0));
  EXPECT_DOUBLE_EQ(st.c_margin, -0.2);
  EXPECT_EQ(s.method4(st, 0.1), Opt(1));
  EXPECT_DOUBLE_EQ(st.c_margin, -0.8);
  EXPECT_EQ(s.method4(st, 0.1), std::nullopt);
}

TEST(Method4, NoSurrogateFeasiblePoint) {
  const auto v = line_view({1.0, 2.0}, {1.0, 2.0}, {0.1, 0.4});
  CandidateSelector s(v, {});
  SelectionState st;
  EXPECT_EQ(s.method4(st, 0.1), std::nullopt);
  EXPECT_EQ(st.c_margin, 0.0);
}

TEST(Method4, DistanceFilter) {
  const auto v = line_view({0.05, 0.1}, {1.0, 2.0}, {-1.0, -1.0});
  CandidateSelector s(v, {{0.0}});
  SelectionState st;
  EXPECT_EQ(s.method4(st, 0.5), std::nullopt);
}

TEST(Method5, IsolationExample) {
  const auto v = line_view({0.0, 1.0, 2.0}, {3.0, 1.0, 2.0});
  CandidateSelector s(v, {});
  const auto& d = s.isolation_distances();
  EXPECT_EQ(d[0], 1.0);
  EXPECT_EQ(d[1], kInf);
  EXPECT_EQ(d[2], 1.0);
  EXPECT_EQ(s.isolation_numbers(), (std::vector<std::size_t>{1, 3, 1}));
  EXPECT_EQ(s.method5(), Opt(1));
}

TEST(Method5, FailsWhenEverythingEvaluated) {
  const auto v = line_view({0.0, 1.0}, {3.0, 1.0});
  CandidateSelector s(v, {{0.0}, {1.0}});
  EXPECT_EQ(s.method5(), std::nullopt);
}

TEST(Method6, DensityExample) {
  const auto v = line_view({0.5, 2.0, 2.1}, {0.0, 0.0, 0.0});
  CandidateSelector s(v, {{0.0}});
  EXPECT_EQ(s.density_numbers(), (std::vector<std::size_t>{1, 3, 3}));
  EXPECT_EQ(s.method6(), Opt(1));
}

TEST(Method6, DuplicateHasZeroDensityAndSingletonIsPicked) {
  const auto at_origin = line_view({0.0}, {0.0});
  CandidateSelector dup(at_origin, {{0.0}});
  EXPECT_EQ(dup.density_numbers()[0], 0u);
  EXPECT_EQ(dup.method6(), std::nullopt);
  const auto far = line_view({9.0}, {0.0});
  CandidateSelector single(far, {{0.0}});
  EXPECT_EQ(single.density_numbers()[0], 1u);
  EXPECT_EQ(single.method6(), Opt(0));
}

TEST(SelectionMethods, MatchBruteForceOnRandomFixtures) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto fx = fixtures::random_selection_fixture(seed);
    EXPECT_EQ(fixtures::compare_selection(fx), "") << "fixture " << seed;
  }
}

TEST(SelectionMethods, SingleMethodSequencesMatchBruteForce) {
  for (std::uint64_t seed = 1000; seed < 1100; ++seed) {
    auto fx = fixtures::random_selection_fixture(seed);
    for (int method = 1; method <= 6; ++method) {
      fx.calls.assign(6, method);
      EXPECT_EQ(fixtures::compare_selection(fx), "") << "fixture " << seed << " method " << method;
    }
  }
}

TEST(SelectionMethods, PicksNeverHitEvaluatedOrRepeat) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto fx = fixtures::random_selection_fixture(seed);
    CandidateSelector sel(fx.view, fx.evaluated);
    SelectionState st;
    double d_min = 0.0, margin = 0.0;
    for (int method : fx.calls) {
      if (!sel.apply(method, st, fx.delta_mesh)) continue;
      EXPECT_GE(st.d_min, d_min);
      EXPECT_LE(st.c_margin, margin);
      EXPECT_LE(st.c_margin, 0.0);
      d_min = st.d_min;
      margin = st.c_margin;
    }
    const auto& s = sel.selected();
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (const auto& x : fx.evaluated) EXPECT_NE(fx.view[s[a]].x, x);
      for (std::size_t b = a + 1; b < s.size(); ++b) EXPECT_NE(fx.view[s[a]].x, fx.view[s[b]].x);
    }
  }
}

TEST(CycleSelect, StopsAtQ) {
  const auto v = line_view({0.1, 0.3, 0.6, 0.9}, {4.0, 3.0, 2.0, 1.0}, {-1.0, -1.0, -1.0, -1.0});
  const int cycle[] = {3, 4, 5, 6};
  SelectionState st;
  const auto r = cycle_select(v, {{0.0}}, 2, cycle, st, 0.01);
  EXPECT_EQ(r.indices.size(), 2u);
  EXPECT_EQ(r.methods, (std::vector<int>{3, 4}));
}

TEST(CycleSelect, AllMethodsFail) {
  const auto v = line_view({0.0, 1.0}, {1.0, 2.0});
  const int cycle[] = {3, 4, 5, 6};
  SelectionState st;
  const auto r = cycle_select(v, {{0.0}, {1.0}}, 4, cycle, st, 0.1);
  EXPECT_TRUE(r.indices.empty());
}

TEST(CycleSelect, AlternatesThroughCycle) {
  std::vector<double> xs, fs;
  for (int i = 0; i < 10; ++i) {
    xs.push_back(i);
    fs.push_back(10.0 - i);
  }
  const auto v = line_view(xs, fs);
  const int cycle[] = {1, 2};
  SelectionState st;
  const auto r = cycle_select(v, {{0.0}}, 6, cycle, st, 1.0);
  EXPECT_EQ(r.methods, (std::vector<int>{1, 2, 1, 2, 1, 2}));
  // best, farthest from {0, 9} (4 and 5 tie), next best, ...
  EXPECT_EQ(r.indices, (std::vector<std::size_t>{9, 4, 8, 2, 7, 1}));
}

TEST(CycleSelect, StopsAfterConsecutiveFailures) {
  // every entry sits on the same node: once it is picked, all others are duplicates
  SurrogateCacheView v(1);
  for (int i = 0; i < 10; ++i) v.add(make_surrogate_point({0.0}, std::vector<double>{double(i)}));
  const int cycle[] = {1, 2};
  SelectionState st;
  const auto r = cycle_select(v, {}, 6, cycle, st, 0.1);
  EXPECT_EQ(r.indices, (std::vector<std::size_t>{0}));
}

TEST(CycleSelect, Deterministic) {
  const auto fx = fixtures::random_selection_fixture(77);
  const int cycle[] = {3, 4, 5, 6};
  SelectionState a, b;
  const auto r1 = cycle_select(fx.view, fx.evaluated, 8, cycle, a, fx.delta_mesh);
  const auto r2 = cycle_select(fx.view, fx.evaluated, 8, cycle, b, fx.delta_mesh);
  EXPECT_EQ(r1.indices, r2.indices);
  EXPECT_EQ(r1.methods, r2.methods);
}
