#include "bmads/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bmads/distance.hpp"

namespace bmads {

void ProblemSpec::validate() const {
  if (n < 1) throw std::invalid_argument("problem dimension must be >= 1");
  if (lower.size() != n || upper.size() != n)
    throw std::invalid_argument("bound vectors must have n entries");
  if (!integer_mask.empty() && integer_mask.size() != n)
    throw std::invalid_argument("integer mask must be empty or have n entries");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(lower[i]) || std::isnan(upper[i]) || lower[i] > upper[i])
      throw std::invalid_argument("lower bound exceeds upper bound at index " + std::to_string(i));
  }
  if (!evaluator) throw std::invalid_argument("problem has no evaluator");
}

double aggregate_violation(std::span<const double> c) {
  double h = 0.0;
  for (double cj : c) {
    if (!std::isfinite(cj)) return kInf;
    if (cj > 0.0) h += cj * cj;
  }
  return h;
}

Evaluation make_evaluation(Point x, const std::optional<BlackboxOutput>& out, EvalTag tag) {
  Evaluation e;
  e.x = std::move(x);
  e.tag = tag;
  if (!out || !std::isfinite(out->f)) {
    e.failed = true;
    if (out) e.c = out->c;
    return e;
  }
  e.f = out->f;
  e.c = out->c;
  e.h = aggregate_violation(e.c);
  if (!std::isfinite(e.h)) {
    e.failed = true;
    e.f = kInf;
    e.h = kInf;
  }
  return e;
}

double point_set_distance(std::span<const double> a, const std::vector<Point>& b) {
  double best = kInf;
  for (const auto& y : b) best = std::min(best, squared_distance(a, y));
  return std::sqrt(best);
}

double set_distance(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.empty() || b.empty()) return kInf;
  double best = kInf;
  for (const auto& x : a)
    for (const auto& y : b) best = std::min(best, squared_distance(x, y));
  return std::sqrt(best);
}

}  // namespace bmads
