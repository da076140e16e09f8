#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bmads/solver.hpp"

namespace bmads {

/// Best-so-far objective after `block` blocks (1-based): +inf while no
/// feasible point is known. Blocks past the end of a run that stopped early
/// keep the last value.
double best_feasible_f(const RunRecord& rec, std::size_t block);

/// First block whose best feasible f is <= target.
std::optional<std::size_t> first_block_reaching(const RunRecord& rec, double target);

/// First block with |f - f_star| <= tau |f_star|.
std::optional<std::size_t> blocks_to_solve(const RunRecord& rec, double f_star, double tau);

struct ProfileCurve {
  std::string solver;
  std::size_t q = 1;
  std::vector<double> alpha;
  std::vector<double> proportion;
};

std::vector<double> default_alpha_grid();

/// Data profile over the (problem, seed) instances of the records with block
/// size q. f_star maps problem names to best-known values (nonzero).
/// Throws std::invalid_argument when f_star is missing or zero for a problem.
std::vector<ProfileCurve> performance_profile(const std::vector<RunRecord>& records, std::size_t q,
                                              double tau,
                                              const std::map<std::string, double>& f_star,
                                              std::span<const double> alphas);

struct SpeedupCell {
  std::string solver;
  std::size_t q = 1;
  bool present = false;  ///< false when no (problem, seed) pair was usable
  double speedup = 0.0;
  double efficiency = 0.0;
  std::size_t pairs = 0;
  std::size_t excluded = 0;
};

/// Geometric-mean speed-up b_ref(1) / b_ref(q) per (solver, q), where
/// b_ref(q) is the first block at which the q run reaches the final value
/// f_ref of the matching q = 1 run. Pairs whose q = 1 run never became
/// feasible, or whose q run never reaches f_ref, are excluded and counted.
std::vector<SpeedupCell> speedup_efficiency(const std::vector<RunRecord>& records);

/// Type-7 (linear interpolation) sample quantile; +inf entries sort last.
double quantile(std::vector<double> values, double p);

struct SummaryRow {
  std::string problem;
  std::string solver;
  std::size_t q = 1;
  std::size_t runs = 0;
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;  ///< final relative error
};

/// Distribution of the final relative error |f - f*| / |f*| per (problem, solver, q).
std::vector<SummaryRow> summary_table(const std::vector<RunRecord>& records,
                                      const std::map<std::string, double>& f_star);

}  // namespace bmads
