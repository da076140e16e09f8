#include "bmads/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bmads/distance.hpp"

namespace bmads {

SurrogatePoint make_surrogate_point(Point x, const std::optional<std::vector<double>>& prediction) {
  SurrogatePoint s;
  s.x = std::move(x);
  if (!prediction || prediction->empty()) return s;
  const auto& y = *prediction;
  s.f = y[0];
  s.c.assign(y.begin() + 1, y.end());
  s.h = aggregate_violation(s.c);
  s.cmax = -kInf;
  for (double cj : s.c) s.cmax = std::max(s.cmax, cj);
  s.failed = !std::isfinite(s.f) || !std::isfinite(s.h);
  if (s.failed) {
    s.f = kInf;
    s.h = kInf;
    s.cmax = kInf;
  }
  return s;
}

void SurrogateCacheView::add(SurrogatePoint p) {
  if (n_ == 0) n_ = p.x.size();
  flat_.insert(flat_.end(), p.x.begin(), p.x.end());
  points_.push_back(std::move(p));
}

namespace {

// True iff sqrt(s2) < r, using the squared value to skip most square roots.
inline bool strictly_within(double s2, double r) {
  if (r == kInf) return true;
  const double r2 = r * r;
  if (s2 > r2 * (1.0 + 1e-12)) return false;
  return std::sqrt(s2) < r;
}

}  // namespace

// Static k-d tree over the surrogate points. Range counts and nearest
// neighbour distances are exact: boxes are only used to skip or accept
// whole subtrees when every point in them is decided with a margin.
class PointIndex {
 public:
  explicit PointIndex(const SurrogateCacheView& view) : view_(view), n_(view.dimension()) {
    const std::size_t N = view.size();
    perm_.resize(N);
    for (std::size_t i = 0; i < N; ++i) perm_[i] = i;

    // Order ranks: equal (h, f) share a rank, smaller is better.
    std::vector<std::size_t> order(perm_);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return surrogate_precedes(view[a], view[b]);
    });
    rank_.assign(N, 0);
    for (std::size_t k = 1; k < N; ++k) {
      const bool tie = !surrogate_precedes(view[order[k - 1]], view[order[k]]);
      rank_[order[k]] = tie ? rank_[order[k - 1]] : k;
    }
    if (N > 0) build(0, N);
  }

  std::size_t rank(std::size_t i) const { return rank_[i]; }

  /// card{s' : d(s', x) < r}, with d computed as sqrt of the squared distance.
  std::size_t count_within(std::span<const double> x, double r) const {
    if (r == kInf) return view_.size();
    if (!(r > 0.0) || nodes_.empty()) return 0;
    const double r2 = r * r;
    return count(0, x, r, r2 * (1.0 + 1e-12), r2 * (1.0 - 1e-12));
  }

  /// Smallest squared distance from x to a point of rank < rank; +inf if none.
  double nearest_better(std::span<const double> x, std::size_t rank) const {
    double best = kInf;
    if (!nodes_.empty()) nearest(0, x, rank, best);
    return best;
  }

 private:
  static constexpr std::size_t kLeaf = 16;

  struct Node {
    std::size_t begin = 0, end = 0;
    std::ptrdiff_t left = -1, right = -1;
    std::size_t min_rank = 0;
    std::size_t box = 0;  // offset into boxes_: n lower then n upper
  };

  std::size_t build(std::size_t begin, std::size_t end) {
    const std::size_t id = nodes_.size();
    nodes_.push_back({});
    Node node;
    node.begin = begin;
    node.end = end;
    node.box = boxes_.size();
    boxes_.resize(boxes_.size() + 2 * n_);
    double* lo = &boxes_[node.box];
    double* hi = lo + n_;
    std::fill(lo, lo + n_, kInf);
    std::fill(hi, hi + n_, -kInf);
    node.min_rank = rank_[perm_[begin]];
    for (std::size_t k = begin; k < end; ++k) {
      const auto x = view_.coords(perm_[k]);
      for (std::size_t d = 0; d < n_; ++d) {
        lo[d] = std::min(lo[d], x[d]);
        hi[d] = std::max(hi[d], x[d]);
      }
      node.min_rank = std::min(node.min_rank, rank_[perm_[k]]);
    }
    if (end - begin > kLeaf) {
      std::size_t axis = 0;
      for (std::size_t d = 1; d < n_; ++d)
        if (hi[d] - lo[d] > hi[axis] - lo[axis]) axis = d;
      if (hi[axis] > lo[axis]) {
        const std::size_t mid = begin + (end - begin) / 2;
        std::nth_element(perm_.begin() + static_cast<std::ptrdiff_t>(begin),
                         perm_.begin() + static_cast<std::ptrdiff_t>(mid),
                         perm_.begin() + static_cast<std::ptrdiff_t>(end),
                         [&](std::size_t a, std::size_t b) {
                           const double xa = view_.coords(a)[axis], xb = view_.coords(b)[axis];
                           return xa < xb || (xa == xb && a < b);
                         });
        node.left = static_cast<std::ptrdiff_t>(build(begin, mid));
        node.right = static_cast<std::ptrdiff_t>(build(mid, end));
      }
    }
    nodes_[id] = node;
    return id;
  }

  // Lower and upper bounds on the squared distance from x to the box; the
  // per-point squared distance computed in the same order never leaves them.
  void box_bounds(const Node& node, std::span<const double> x, double& near2, double& far2) const {
    const double* lo = &boxes_[node.box];
    const double* hi = lo + n_;
    near2 = 0.0;
    far2 = 0.0;
    for (std::size_t d = 0; d < n_; ++d) {
      const double below = lo[d] - x[d];
      const double above = x[d] - hi[d];
      const double gap = below > 0.0 ? below : (above > 0.0 ? above : 0.0);
      near2 += gap * gap;
      const double span = std::max(x[d] - lo[d], hi[d] - x[d]);
      far2 += span * span;
    }
  }

  std::size_t count(std::size_t id, std::span<const double> x, double r, double outer2,
                    double inner2) const {
    const Node& node = nodes_[id];
    double near2, far2;
    box_bounds(node, x, near2, far2);
    if (near2 > outer2) return 0;
    if (far2 < inner2) return node.end - node.begin;
    if (node.left < 0) {
      std::size_t c = 0;
      for (std::size_t k = node.begin; k < node.end; ++k)
        c += strictly_within(squared_distance(view_.coords(perm_[k]), x), r) ? 1 : 0;
      return c;
    }
    return count(static_cast<std::size_t>(node.left), x, r, outer2, inner2) +
           count(static_cast<std::size_t>(node.right), x, r, outer2, inner2);
  }

  void nearest(std::size_t id, std::span<const double> x, std::size_t rank, double& best) const {
    const Node& node = nodes_[id];
    if (node.min_rank >= rank) return;
    double near2, far2;
    box_bounds(node, x, near2, far2);
    if (near2 >= best) return;
    if (node.left < 0) {
      for (std::size_t k = node.begin; k < node.end; ++k) {
        const std::size_t j = perm_[k];
        if (rank_[j] < rank) best = std::min(best, squared_distance(view_.coords(j), x));
      }
      return;
    }
    const auto l = static_cast<std::size_t>(node.left);
    const auto rr = static_cast<std::size_t>(node.right);
    double ln, lf, rn, rf;
    box_bounds(nodes_[l], x, ln, lf);
    box_bounds(nodes_[rr], x, rn, rf);
    if (ln <= rn) {
      nearest(l, x, rank, best);
      nearest(rr, x, rank, best);
    } else {
      nearest(rr, x, rank, best);
      nearest(l, x, rank, best);
    }
  }

  const SurrogateCacheView& view_;
  std::size_t n_;
  std::vector<std::size_t> perm_;
  std::vector<std::size_t> rank_;
  std::vector<Node> nodes_;
  std::vector<double> boxes_;
};

CandidateSelector::~CandidateSelector() = default;

const PointIndex& CandidateSelector::index() {
  if (!index_) index_ = std::make_unique<PointIndex>(view_);
  return *index_;
}

CandidateSelector::CandidateSelector(const SurrogateCacheView& view,
                                     const std::vector<Point>& evaluated)
    : view_(view), dist_(view.size(), kInf) {
  for (std::size_t i = 0; i < view_.size(); ++i) {
    double best = kInf;
    const auto xi = view_.coords(i);
    for (const auto& x : evaluated) best = std::min(best, squared_distance(xi, x));
    dist_[i] = std::sqrt(best);
  }
}

void CandidateSelector::select(std::size_t i) {
  selected_.push_back(i);
  const auto z = view_.coords(i);
  for (std::size_t k = 0; k < view_.size(); ++k) {
    const double d = std::sqrt(squared_distance(view_.coords(k), z));
    if (d < dist_[k]) {
      dist_[k] = d;
      if (density_ready_) density_dirty_[k] = 1;
    }
  }
}

std::optional<std::size_t> CandidateSelector::method1() {
  std::optional<std::size_t> best;
  double bh = kInf, bf = kInf;  // virtual worst point
  for (std::size_t i = 0; i < view_.size(); ++i) {
    const auto& s = view_[i];
    if (precedes(s.h, s.f, bh, bf) && dist_[i] > 0.0) {
      best = i;
      bh = s.h;
      bf = s.f;
    }
  }
  if (best) select(*best);
  return best;
}

std::optional<std::size_t> CandidateSelector::method2() {
  std::optional<std::size_t> best;
  double bd = 0.0;  // d(s_inf, X u S) = 0
  for (std::size_t i = 0; i < view_.size(); ++i) {
    if (dist_[i] > bd) {
      best = i;
      bd = dist_[i];
    }
  }
  if (best) select(*best);
  return best;
}

std::optional<std::size_t> CandidateSelector::method3(SelectionState& state, double delta_mesh) {
  if (!state.distance_initialized) {
    state.d_min = 0.0;
    state.distance_initialized = true;
  }
  std::optional<std::size_t> best;
  double bh = kInf, bf = kInf;
  for (std::size_t i = 0; i < view_.size(); ++i) {
    const auto& s = view_[i];
    if (precedes(s.h, s.f, bh, bf) && dist_[i] >= state.d_min && dist_[i] > 0.0) {
      best = i;
      bh = s.h;
      bf = s.f;
    }
  }
  if (best) {
    select(*best);
    state.d_min += delta_mesh;
  }
  return best;
}

std::optional<std::size_t> CandidateSelector::method4(SelectionState& state, double delta_mesh) {
  if (!state.margin_initialized) {
    double widest = -kInf;
    bool any = false;
    for (const auto& s : view_.points()) {
      if (s.cmax < 0.0) {
        widest = std::max(widest, s.cmax);
        any = true;
      }
    }
    state.c_margin = any ? std::min(0.0, widest) : 0.0;
    state.margin_initialized = true;
  }
  std::optional<std::size_t> best;
  double bf = kInf;
  for (std::size_t i = 0; i < view_.size(); ++i) {
    const auto& s = view_[i];
    if (s.cmax <= state.c_margin && s.f < bf && dist_[i] > delta_mesh) {
      best = i;
      bf = s.f;
    }
  }
  if (best) {
    select(*best);
    state.c_margin = 2.0 * view_[*best].cmax;
  }
  return best;
}

void CandidateSelector::compute_isolation() {
  const std::size_t N = view_.size();
  const PointIndex& idx = index();
  d_iso_.assign(N, kInf);
  n_iso_.assign(N, 0);
  for (std::size_t i = 0; i < N; ++i) {
    const double best = idx.nearest_better(view_.coords(i), idx.rank(i));
    d_iso_[i] = std::sqrt(best);
    n_iso_[i] = idx.count_within(view_.coords(i), d_iso_[i]);
  }
}

const std::vector<double>& CandidateSelector::isolation_distances() {
  if (d_iso_.size() != view_.size()) compute_isolation();
  return d_iso_;
}

const std::vector<std::size_t>& CandidateSelector::isolation_numbers() {
  if (n_iso_.size() != view_.size()) compute_isolation();
  return n_iso_;
}

std::optional<std::size_t> CandidateSelector::method5() {
  const auto& n_iso = isolation_numbers();
  std::optional<std::size_t> best;
  std::size_t bn = 0;  // n_iso(s_inf) = 0
  for (std::size_t i = 0; i < view_.size(); ++i) {
    if (n_iso[i] > bn && dist_[i] > 0.0) {
      best = i;
      bn = n_iso[i];
    }
  }
  if (best) select(*best);
  return best;
}

const std::vector<std::size_t>& CandidateSelector::density_numbers() {
  const std::size_t N = view_.size();
  if (!density_ready_) {
    n_density_.assign(N, 0);
    density_dirty_.assign(N, 1);
    density_ready_ = true;
  }
  const PointIndex& idx = index();
  for (std::size_t i = 0; i < N; ++i) {
    if (!density_dirty_[i]) continue;
    n_density_[i] = idx.count_within(view_.coords(i), dist_[i]);
    density_dirty_[i] = 0;
  }
  return n_density_;
}

std::optional<std::size_t> CandidateSelector::method6() {
  // Balls only shrink as S grows, so a stale count bounds the current one
  // from above: recount lazily from the top of a (count desc, index asc) heap.
  const auto before = [](const std::pair<std::size_t, std::size_t>& a,
                         const std::pair<std::size_t, std::size_t>& b) {
    return a.first < b.first || (a.first == b.first && a.second > b.second);
  };
  if (!density_ready_ || density_heap_.empty()) {
    density_numbers();
    density_heap_.clear();
    for (std::size_t i = 0; i < view_.size(); ++i) density_heap_.emplace_back(n_density_[i], i);
    std::make_heap(density_heap_.begin(), density_heap_.end(), before);
  }
  const PointIndex& idx = index();
  while (!density_heap_.empty()) {
    const auto [count, i] = density_heap_.front();
    if (!density_dirty_[i] && count == n_density_[i]) break;
    std::pop_heap(density_heap_.begin(), density_heap_.end(), before);
    if (density_dirty_[i]) {
      n_density_[i] = idx.count_within(view_.coords(i), dist_[i]);
      density_dirty_[i] = 0;
    }
    density_heap_.back() = {n_density_[i], i};
    std::push_heap(density_heap_.begin(), density_heap_.end(), before);
  }
  if (density_heap_.empty() || density_heap_.front().first == 0) return std::nullopt;
  const std::size_t best = density_heap_.front().second;
  select(best);
  return best;
}

std::optional<std::size_t> CandidateSelector::apply(int method, SelectionState& state,
                                                    double delta_mesh) {
  switch (method) {
    case 1: return method1();
    case 2: return method2();
    case 3: return method3(state, delta_mesh);
    case 4: return method4(state, delta_mesh);
    case 5: return method5();
    case 6: return method6();
    default: return std::nullopt;
  }
}

CycleResult cycle_select(const SurrogateCacheView& view, const std::vector<Point>& evaluated,
                         std::size_t q, std::span<const int> method_cycle, SelectionState& state,
                         double delta_mesh) {
  CycleResult out;
  if (q == 0 || method_cycle.empty() || view.empty()) return out;
  CandidateSelector selector(view, evaluated);
  std::size_t failures = 0;
  for (std::size_t k = 0; out.indices.size() < q && failures < method_cycle.size(); ++k) {
    const int method = method_cycle[k % method_cycle.size()];
    if (auto pick = selector.apply(method, state, delta_mesh)) {
      out.indices.push_back(*pick);
      out.methods.push_back(method);
      failures = 0;
    } else {
      ++failures;
    }
  }
  return out;
}

}  // namespace bmads
