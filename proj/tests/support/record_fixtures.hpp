#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "bmads/solver.hpp"

namespace fixtures {

// Trace with one row per block; +inf entries are blocks without a feasible point.
inline bmads::RunRecord make_record(const std::string& problem, bmads::SolverKind solver,
                                    std::size_t q, std::uint64_t seed,
                                    const std::vector<double>& best_f) {
  bmads::RunRecord r;
  r.problem = problem;
  r.solver = solver;
  r.q = q;
  r.seed = seed;
  for (std::size_t b = 0; b < best_f.size(); ++b) {
    bmads::TraceRow row;
    row.block = b + 1;
    row.iteration = b;
    row.phase = "poll";
    row.q = q;
    row.evaluations = (b + 1) * q;
    row.best_f = best_f[b];
    row.best_h = std::isfinite(best_f[b]) ? 0.0 : bmads::kInf;
    row.delta_mesh = 0.01;
    row.delta_poll = 0.1;
    r.trace.push_back(row);
  }
  r.best_f = best_f.empty() ? bmads::kInf : best_f.back();
  r.best_h = std::isfinite(r.best_f) ? 0.0 : bmads::kInf;
  r.evaluations = best_f.size() * q;
  return r;
}

// Value v0 until block `at` (1-based), v1 from then on.
inline std::vector<double> step_trace(std::size_t blocks, std::size_t at, double v0, double v1) {
  std::vector<double> f(blocks, v0);
  for (std::size_t b = at; b <= blocks; ++b) f[b - 1] = v1;
  return f;
}

}  // namespace fixtures
