#include <gtest/gtest.h>

#include <cmath>

#include "bmads/solver.hpp"

using namespace bmads;

namespace {

ProblemSpec sphere(std::size_t n) {
  ProblemSpec s;
  s.name = "sphere";
  s.n = n;
  s.m = 1;
  s.lower.assign(n, -1.0);
  s.upper.assign(n, 2.0);
  s.integer_mask.assign(n, false);
  s.evaluator = [](std::span<const double> x) -> std::optional<BlackboxOutput> {
    double f = 0, sum = 0;
    for (double v : x) {
      f += (v - 0.3) * (v - 0.3);
      sum += v;
    }
    return BlackboxOutput{f, {-1.0 - sum}};
  };
  return s;
}

SolverConfig quick(SolverKind kind, std::size_t q, std::size_t blocks) {
  SolverConfig c;
  c.kind = kind;
  c.q = q;
  c.block_budget = blocks;
  c.seed = 5;
  c.search.inner_budget = 1000;
  return c;
}

void expect_monotone(const RunRecord& r) {
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    const auto& a = r.trace[i - 1];
    const auto& b = r.trace[i];
    EXPECT_FALSE(precedes(a.best_h, a.best_f, b.best_h, b.best_f))
        << solver_name(r.solver) << " block " << b.block;
  }
}

}  // namespace

TEST(Solver, NamesRoundTrip) {
  for (SolverKind k : kAllSolvers) EXPECT_EQ(solver_from_name(solver_name(k)), k);
  EXPECT_EQ(solver_from_name("lowess_b"), SolverKind::lowess_b);
  EXPECT_EQ(solver_from_name("lowess-a"), SolverKind::lowess_a);
  EXPECT_FALSE(solver_from_name("nomad"));
}

TEST(Solver, RejectsBadConfiguration) {
  auto c = quick(SolverKind::mads, 0, 10);
  EXPECT_THROW(c.validate(), std::invalid_argument);
  const auto p = sphere(2);
  const Point one[] = {{0.0, 0.0}};
  EXPECT_THROW(run_solver(quick(SolverKind::multistart, 2, 5), p, one), std::invalid_argument);
  const Point wrong[] = {{0.0}};
  EXPECT_THROW(run_solver(quick(SolverKind::mads, 1, 5), p, wrong), std::invalid_argument);
}

TEST(Solver, StartingPointsAreReproducibleAndInBounds) {
  const auto p = sphere(3);
  const auto a = starting_points(p, 1, 0, 8);
  const auto b = starting_points(p, 1, 0, 8);
  const auto c = starting_points(p, 1, 1, 8);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (const auto& x : a)
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_GE(x[i], p.lower[i]);
      EXPECT_LE(x[i], p.upper[i]);
    }
}

TEST(Solver, MadsPollBlocksHaveTwoNPoints) {
  const auto e = *find_problem("welded");
  const auto r = run_bench(quick(SolverKind::mads, 8, 30), e.spec);
  ASSERT_EQ(r.trace.size(), 30u);
  EXPECT_EQ(r.trace[0].evaluations, 1u);
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    EXPECT_EQ(r.trace[i].phase, "poll");
    EXPECT_EQ(r.trace[i].evaluations - r.trace[i - 1].evaluations, 8u);
  }
}

TEST(Solver, MultistartEvaluatesOnePointPerInstance) {
  const auto e = *find_problem("vessel");
  const auto r = run_bench(quick(SolverKind::multistart, 4, 25), e.spec);
  ASSERT_EQ(r.trace.size(), 25u);
  for (std::size_t i = 0; i < r.trace.size(); ++i) EXPECT_EQ(r.trace[i].evaluations, 4 * (i + 1));
  expect_monotone(r);
}

TEST(Solver, LowessSearchRespectsQ) {
  const auto e = *find_problem("tcsd");
  for (std::size_t q : {1u, 4u}) {
    const auto r = run_bench(quick(SolverKind::lowess_b, q, 20), e.spec);
    std::size_t searches = 0;
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      const std::size_t used = r.trace[i].evaluations - r.trace[i - 1].evaluations;
      EXPECT_LE(used, q);
      if (r.trace[i].phase == "search") ++searches;
    }
    EXPECT_GT(searches, 0u);
    EXPECT_GT(r.search_report.size(), 0u);
    EXPECT_GT(r.fits.size(), 0u);
    for (const auto& s : r.search_report) {
      if (q == 1) {
        EXPECT_EQ(s.method, 3);
      }
    }
  }
}

TEST(Solver, BestSoFarIsMonotoneForEverySolver) {
  const auto e = *find_problem("tcsd");
  for (SolverKind k : kAllSolvers) {
    const auto r = run_bench(quick(k, 4, 25), e.spec);
    EXPECT_LE(r.trace.size(), 25u);
    expect_monotone(r);
    if (!r.best_x.empty()) {
      const auto out = *e.spec.evaluator(r.best_x);
      EXPECT_NEAR(out.f, r.best_f, 1e-9 * std::abs(r.best_f));
    }
  }
}

TEST(Solver, WorkerCountDoesNotChangeTheRun) {
  const auto e = *find_problem("welded");
  for (SolverKind k : {SolverKind::mads, SolverKind::lowess_a}) {
    auto c1 = quick(k, 4, 15);
    auto c4 = c1;
    c1.workers = 1;
    c4.workers = 4;
    const auto a = run_bench(c1, e.spec);
    const auto b = run_bench(c4, e.spec);
    ASSERT_EQ(a.trace.size(), b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
      EXPECT_EQ(a.trace[i].best_f, b.trace[i].best_f);
      EXPECT_EQ(a.trace[i].best_h, b.trace[i].best_h);
      EXPECT_EQ(a.trace[i].delta_mesh, b.trace[i].delta_mesh);
    }
    EXPECT_EQ(a.best_x, b.best_x);
  }
}

TEST(Solver, MadsConvergesOnConvexQuadratic) {
  const auto p = sphere(2);
  auto c = quick(SolverKind::mads, 1, 5000);
  const Point start[] = {{1.7, -0.6}};
  const auto r = run_solver(c, p, start);
  EXPECT_TRUE(r.mesh_underflow);
  EXPECT_LT(r.trace.size(), 5000u);
  EXPECT_EQ(r.best_h, 0.0);
  EXPECT_LT(r.best_f, 1e-6);
  EXPECT_NEAR(r.best_x[0], 0.3, 1e-3);
  EXPECT_NEAR(r.best_x[1], 0.3, 1e-3);
}

TEST(Solver, BenchSeedsDifferPerRun) {
  EXPECT_EQ(bench_run_seed(1, 3), bench_run_seed(1, 3));
  EXPECT_NE(bench_run_seed(1, 3), bench_run_seed(1, 4));
  EXPECT_NE(bench_run_seed(1, 3), bench_run_seed(2, 3));
}
