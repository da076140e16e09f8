#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bmads/types.hpp"

namespace bmads {

/// One entry of the surrogate cache: a point with its predicted outputs.
struct SurrogatePoint {
  Point x;
  double f = kInf;        ///< predicted objective
  std::vector<double> c;  ///< predicted constraints
  double h = kInf;        ///< aggregate violation of the predicted constraints
  double cmax = kInf;     ///< most violated predicted constraint (-inf when m = 0)
  bool failed = true;
};

/// Surrogate evaluation record. A failed prediction behaves like the
/// virtual worst point: h = f = +inf.
SurrogatePoint make_surrogate_point(Point x, const std::optional<std::vector<double>>& prediction);

inline bool surrogate_precedes(const SurrogatePoint& a, const SurrogatePoint& b) {
  return precedes(a.h, a.f, b.h, b.f);
}

/// Insertion-ordered surrogate cache with coordinates stored contiguously
/// for the O(N^2) distance sweeps.
class SurrogateCacheView {
 public:
  SurrogateCacheView() = default;
  explicit SurrogateCacheView(std::size_t n) : n_(n) {}

  void add(SurrogatePoint p);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  std::size_t dimension() const { return n_; }
  const SurrogatePoint& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<SurrogatePoint>& points() const { return points_; }
  std::span<const double> coords(std::size_t i) const { return {flat_.data() + i * n_, n_}; }
  std::span<const double> flat() const { return flat_; }

 private:
  std::size_t n_ = 0;
  std::vector<SurrogatePoint> points_;
  std::vector<double> flat_;
};

/// Cursors of the distance- and feasibility-constrained methods. Reset at
/// the start of every outer iteration.
struct SelectionState {
  double d_min = 0.0;
  double c_margin = 0.0;
  bool distance_initialized = false;
  bool margin_initialized = false;
};

class PointIndex;

/// Greedy selection of surrogate-cache points for blackbox evaluation.
///
/// Holds d(s, X u S) for every surrogate point and updates it as points are
/// selected. Every method returns the view index of its pick (and appends
/// it to S) or nullopt when it fails. Ties go to the earliest view entry.
class CandidateSelector {
 public:
  CandidateSelector(const SurrogateCacheView& view, const std::vector<Point>& evaluated);
  CandidateSelector(SurrogateCacheView&&, const std::vector<Point>&) = delete;  // keeps a reference
  ~CandidateSelector();

  /// Best point under the surrogate order with d(s, X u S) > 0.
  std::optional<std::size_t> method1();
  /// Point farthest from X u S.
  std::optional<std::size_t> method2();
  /// Best point with d(s, X u S) >= d_min (and > 0); d_min grows by delta_mesh per pick.
  std::optional<std::size_t> method3(SelectionState& state, double delta_mesh);
  /// Lowest f_hat with c_max <= c_margin and d(s, X u S) > delta_mesh; the margin
  /// doubles the picked c_max after each success.
  std::optional<std::size_t> method4(SelectionState& state, double delta_mesh);
  /// Highest isolation number among points not in X u S.
  std::optional<std::size_t> method5();
  /// Highest density number.
  std::optional<std::size_t> method6();

  std::optional<std::size_t> apply(int method, SelectionState& state, double delta_mesh);

  const std::vector<std::size_t>& selected() const { return selected_; }
  double distance_to_evaluated(std::size_t i) const { return dist_[i]; }

  /// Isolation distance and number (computed once, they do not depend on S).
  const std::vector<double>& isolation_distances();
  const std::vector<std::size_t>& isolation_numbers();
  /// Density numbers for the current S.
  const std::vector<std::size_t>& density_numbers();

 private:
  void select(std::size_t i);
  void compute_isolation();
  const PointIndex& index();

  const SurrogateCacheView& view_;
  std::unique_ptr<PointIndex> index_;
  std::vector<double> dist_;
  std::vector<std::size_t> selected_;
  std::vector<double> d_iso_;
  std::vector<std::size_t> n_iso_;
  std::vector<std::size_t> n_density_;
  std::vector<char> density_dirty_;
  std::vector<std::pair<std::size_t, std::size_t>> density_heap_;
  bool density_ready_ = false;
};

struct CycleResult {
  std::vector<std::size_t> indices;  ///< view indices in selection order
  std::vector<int> methods;          ///< method that produced each pick
};

/// Cycles through `method_cycle` until q points are selected or every
/// method of the cycle has failed consecutively.
CycleResult cycle_select(const SurrogateCacheView& view, const std::vector<Point>& evaluated,
                         std::size_t q, std::span<const int> method_cycle, SelectionState& state,
                         double delta_mesh);

}  // namespace bmads
