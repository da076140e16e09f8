#include "bmads/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace bmads {

double best_feasible_f(const RunRecord& rec, std::size_t block) {
  if (rec.trace.empty() || block == 0) return kInf;
  const auto& row = rec.trace[std::min(block, rec.trace.size()) - 1];
  return row.best_h == 0.0 ? row.best_f : kInf;
}

std::optional<std::size_t> first_block_reaching(const RunRecord& rec, double target) {
  for (const auto& row : rec.trace)
    if (row.best_h == 0.0 && row.best_f <= target) return row.block;
  return std::nullopt;
}

std::optional<std::size_t> blocks_to_solve(const RunRecord& rec, double f_star, double tau) {
  for (const auto& row : rec.trace)
    if (row.best_h == 0.0 && std::abs(row.best_f - f_star) <= tau * std::abs(f_star)) return row.block;
  return std::nullopt;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> a;
  for (int k = 0; k <= 36; ++k) a.push_back(1.0 + 0.25 * k);
  return a;
}

std::vector<ProfileCurve> performance_profile(const std::vector<RunRecord>& records, std::size_t q,
                                              double tau,
                                              const std::map<std::string, double>& f_star,
                                              std::span<const double> alphas) {
  using Instance = std::pair<std::string, std::uint64_t>;
  std::map<std::string, std::map<Instance, std::optional<std::size_t>>> solved;
  std::map<Instance, std::optional<std::size_t>> b_min;
  for (const auto& r : records) {
    if (r.q != q) continue;
    auto it = f_star.find(r.problem);
    if (it == f_star.end() || it->second == 0.0)
      throw std::invalid_argument("relative tolerance needs a nonzero best-known value for " + r.problem);
    const Instance inst{r.problem, r.seed};
    const auto b = blocks_to_solve(r, it->second, tau);
    solved[std::string(solver_name(r.solver))][inst] = b;
    auto& m = b_min[inst];
    if (b && (!m || *b < *m)) m = b;
  }

  std::vector<ProfileCurve> out;
  const double total = static_cast<double>(b_min.size());
  for (const auto& [solver, runs] : solved) {
    ProfileCurve c;
    c.solver = solver;
    c.q = q;
    for (double a : alphas) {
      std::size_t count = 0;
      for (const auto& [inst, b] : runs) {
        const auto& m = b_min.at(inst);
        if (b && m && static_cast<double>(*b) <= a * static_cast<double>(*m)) ++count;
      }
      c.alpha.push_back(a);
      c.proportion.push_back(total > 0 ? static_cast<double>(count) / total : 0.0);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<SpeedupCell> speedup_efficiency(const std::vector<RunRecord>& records) {
  // (solver, problem, seed) -> q = 1 record
  using Key = std::tuple<std::string, std::string, std::uint64_t>;
  std::map<Key, const RunRecord*> serial;
  for (const auto& r : records)
    if (r.q == 1) serial[{std::string(solver_name(r.solver)), r.problem, r.seed}] = &r;

  struct Acc {
    double log_sum = 0.0;
    std::size_t pairs = 0;
    std::size_t excluded = 0;
  };
  std::map<std::pair<std::string, std::size_t>, Acc> acc;
  for (const auto& r : records) {
    const std::string s(solver_name(r.solver));
    auto& a = acc[{s, r.q}];
    auto it = serial.find({s, r.problem, r.seed});
    if (it == serial.end()) {
      ++a.excluded;
      continue;
    }
    const RunRecord& one = *it->second;
    const double f_ref = best_feasible_f(one, one.trace.size());
    if (!std::isfinite(f_ref)) {
      ++a.excluded;
      continue;
    }
    const auto b1 = first_block_reaching(one, f_ref);
    const auto bq = first_block_reaching(r, f_ref);
    if (!b1 || !bq) {
      ++a.excluded;
      continue;
    }
    a.log_sum += std::log(static_cast<double>(*b1) / static_cast<double>(*bq));
    ++a.pairs;
  }

  std::vector<SpeedupCell> out;
  for (const auto& [key, a] : acc) {
    SpeedupCell c;
    c.solver = key.first;
    c.q = key.second;
    c.pairs = a.pairs;
    c.excluded = a.excluded;
    c.present = a.pairs > 0;
    if (c.present) {
      c.speedup = std::exp(a.log_sum / static_cast<double>(a.pairs));
      c.efficiency = c.speedup / static_cast<double>(c.q);
    }
    out.push_back(c);
  }
  return out;
}

double quantile(std::vector<double> v, double p) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  if (frac == 0.0 || v[lo] == v[hi]) return v[lo];
  if (!std::isfinite(v[hi])) return kInf;
  return v[lo] + frac * (v[hi] - v[lo]);
}

std::vector<SummaryRow> summary_table(const std::vector<RunRecord>& records,
                                      const std::map<std::string, double>& f_star) {
  std::map<std::tuple<std::string, std::string, std::size_t>, std::vector<double>> groups;
  for (const auto& r : records) {
    auto it = f_star.find(r.problem);
    if (it == f_star.end() || it->second == 0.0)
      throw std::invalid_argument("relative error needs a nonzero best-known value for " + r.problem);
    const double f = best_feasible_f(r, r.trace.size());
    const double err = std::isfinite(f) ? std::abs(f - it->second) / std::abs(it->second) : kInf;
    groups[{r.problem, std::string(solver_name(r.solver)), r.q}].push_back(err);
  }
  std::vector<SummaryRow> out;
  for (const auto& [key, v] : groups) {
    SummaryRow s;
    std::tie(s.problem, s.solver, s.q) = key;
    s.runs = v.size();
    s.min = quantile(v, 0.0);
    s.q1 = quantile(v, 0.25);
    s.median = quantile(v, 0.5);
    s.q3 = quantile(v, 0.75);
    s.max = quantile(v, 1.0);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace bmads
