#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bmads/lowess.hpp"
#include "bmads/problems.hpp"
#include "bmads/surrogate_solve.hpp"
#include "bmads/types.hpp"

namespace bmads {

enum class SolverKind { mads, multistart, lhsearch, lowess_a, lowess_b };

inline constexpr SolverKind kAllSolvers[] = {SolverKind::mads, SolverKind::multistart,
                                             SolverKind::lhsearch, SolverKind::lowess_a,
                                             SolverKind::lowess_b};

std::string_view solver_name(SolverKind kind);
/// Accepts "lowess-b" and "lowess_b" spellings.
std::optional<SolverKind> solver_from_name(std::string_view name);

struct SolverConfig {
  SolverKind kind = SolverKind::lowess_b;
  std::size_t q = 1;
  std::size_t block_budget = 100;
  std::uint64_t seed = 0;
  std::size_t workers = 0;  ///< concurrent blackbox calls per block; 0 means q
  SearchConfig search;      ///< method_cycle is set from kind for the Lowess solvers
  double initial_poll = 0.1;
  std::size_t training_cap = 500;
  unsigned sleep_ms = 0;  ///< artificial delay per blackbox call

  void validate() const;
};

/// Best-so-far state after one block evaluation.
struct TraceRow {
  std::size_t block = 0;
  std::size_t iteration = 0;
  std::string phase;  ///< init, search, poll or multi
  std::size_t q = 0;
  std::size_t evaluations = 0;
  double best_f = kInf;
  double best_h = kInf;
  double delta_mesh = 0.0;
  double delta_poll = 0.0;
};

/// One SEARCH candidate with its surrogate and true outputs.
struct SearchReportEntry {
  std::size_t iteration = 0;
  int method = 0;
  Point x;  ///< problem coordinates
  double f_hat = kInf;
  double h_hat = kInf;
  double f = kInf;
  double h = kInf;
};

struct RunRecord {
  std::string problem;
  SolverKind solver = SolverKind::mads;
  std::size_t q = 1;
  std::uint64_t seed = 0;
  std::vector<TraceRow> trace;
  Point best_x;  ///< problem coordinates; empty if nothing finite was found
  double best_f = kInf;
  double best_h = kInf;
  std::size_t evaluations = 0;
  std::size_t iterations = 0;
  bool mesh_underflow = false;
  double wall_ms = 0.0;
  std::vector<SearchReportEntry> search_report;
  std::vector<FitDiagnostics> fits;
};

/// Starting points of one run: an LHS design of `count` points in the
/// problem bounds, drawn from the (seed, run) substream. Multistart uses the
/// first q points, the other solvers the first one.
std::vector<Point> starting_points(const ProblemSpec& spec, std::uint64_t seed, std::size_t run,
                                   std::size_t count = 64);

/// Runs one solver for block_budget block evaluations (fewer on mesh underflow).
RunRecord run_solver(const SolverConfig& config, const ProblemSpec& problem,
                     std::span<const Point> starts);

/// Seed of run r in a bench cell; the same for every solver and q so that
/// runs of one (problem, r) pair share their starting points.
std::uint64_t bench_run_seed(std::uint64_t base_seed, std::size_t run);

/// One bench run: config.seed selects the starting points
/// (starting_points(problem, config.seed, 0, max(q, 1))).
RunRecord run_bench(const SolverConfig& config, const ProblemSpec& problem);

}  // namespace bmads
