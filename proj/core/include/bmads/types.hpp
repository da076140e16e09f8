#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bmads {

using Point = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Raw output of one blackbox call: objective and constraints c_j(x) <= 0.
struct BlackboxOutput {
  double f = kInf;
  std::vector<double> c;
};

/// Blackbox mapping x -> (f, c_1..c_m). An empty optional signals a failed call.
using Blackbox = std::function<std::optional<BlackboxOutput>(std::span<const double>)>;

struct ProblemSpec {
  std::string name;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> integer_mask;
  Blackbox evaluator;

  /// Throws std::invalid_argument when the dimensions or bounds are inconsistent.
  void validate() const;
};

enum class EvalTag { true_eval, surrogate_eval };

struct Evaluation {
  Point x;
  double f = kInf;
  std::vector<double> c;
  double h = kInf;
  EvalTag tag = EvalTag::true_eval;
  bool failed = false;

  bool feasible() const { return !failed && h == 0.0; }
  bool finite() const { return h < kInf && f < kInf; }
};

/// Sum of squared positive constraint values. Returns +inf if any entry is not finite.
double aggregate_violation(std::span<const double> c);

/// Builds an evaluation from blackbox output; a missing or non-finite output is a failure.
Evaluation make_evaluation(Point x, const std::optional<BlackboxOutput>& out,
                           EvalTag tag = EvalTag::true_eval);

/// Sentinel worst candidate: h = f = +inf and zero distance to the evaluated set.
struct VirtualWorst {
  static constexpr double h = kInf;
  static constexpr double f = kInf;
  static constexpr double distance = 0.0;
};

/// Strict order on (h, f): feasibility first, then objective.
constexpr bool precedes(double ha, double fa, double hb, double fb) {
  return ha < hb || (ha == hb && fa < fb);
}

inline bool precedes(const Evaluation& a, const Evaluation& b) {
  return precedes(a.h, a.f, b.h, b.f);
}

/// a is not worse than b. A total preorder: equal (h, f) pairs precede each other.
inline bool precedes_eq(const Evaluation& a, const Evaluation& b) { return !precedes(b, a); }

inline bool precedes(const Evaluation& a, VirtualWorst) {
  return precedes(a.h, a.f, VirtualWorst::h, VirtualWorst::f);
}

}  // namespace bmads
