#pragma once

// Direct transcription of the six selection rules: every quantity is
// recomputed from scratch with plain loops at each call.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "bmads/distance.hpp"
#include "bmads/selection.hpp"

namespace ref {

using bmads::Point;
using bmads::SurrogateCacheView;

inline constexpr double inf = std::numeric_limits<double>::infinity();

class Selector {
 public:
  Selector(const SurrogateCacheView& view, std::vector<Point> evaluated)
      : view_(view), xs_(std::move(evaluated)) {}

  double dist(std::size_t i) const {
    double best = inf;
    for (const auto& x : xs_) best = std::min(best, bmads::distance(view_.coords(i), x));
    for (std::size_t j : s_) best = std::min(best, bmads::distance(view_.coords(i), view_.coords(j)));
    return best;
  }

  double pair(std::size_t i, std::size_t j) const {
    return bmads::distance(view_.coords(i), view_.coords(j));
  }

  bool better(std::size_t a, std::size_t b) const {
    return bmads::precedes(view_[a].h, view_[a].f, view_[b].h, view_[b].f);
  }

  double d_iso(std::size_t i) const {
    double best = inf;
    for (std::size_t j = 0; j < view_.size(); ++j)
      if (better(j, i)) best = std::min(best, pair(i, j));
    return best;
  }

  std::size_t n_iso(std::size_t i) const {
    const double r = d_iso(i);
    std::size_t c = 0;
    for (std::size_t j = 0; j < view_.size(); ++j) c += pair(i, j) < r ? 1 : 0;
    return c;
  }

  std::size_t n_density(std::size_t i) const {
    const double r = dist(i);
    std::size_t c = 0;
    for (std::size_t j = 0; j < view_.size(); ++j) c += pair(i, j) < r ? 1 : 0;
    return c;
  }

  std::optional<std::size_t> m1() {
    std::optional<std::size_t> best;
    double bh = inf, bf = inf;
    for (std::size_t i = 0; i < view_.size(); ++i) {
      if (dist(i) <= 0.0) continue;
      if (bmads::precedes(view_[i].h, view_[i].f, bh, bf)) {
        best = i;
        bh = view_[i].h;
        bf = view_[i].f;
      }
    }
    return take(best);
  }

  std::optional<std::size_t> m2() {
    std::optional<std::size_t> best;
    double bd = 0.0;
    for (std::size_t i = 0; i < view_.size(); ++i) {
      const double d = dist(i);
      if (d > bd) {
        best = i;
        bd = d;
      }
    }
    return take(best);
  }

  std::optional<std::size_t> m3(double delta) {
    std::optional<std::size_t> best;
    double bh = inf, bf = inf;
    for (std::size_t i = 0; i < view_.size(); ++i) {
      const double d = dist(i);
      if (d < d_min_ || d <= 0.0) continue;
      if (bmads::precedes(view_[i].h, view_[i].f, bh, bf)) {
        best = i;
        bh = view_[i].h;
        bf = view_[i].f;
      }
    }
    if (best) d_min_ += delta;
    return take(best);
  }

  std::optional<std::size_t> m4(double delta) {
    if (!margin_set_) {
      margin_ = 0.0;
      bool any = false;
      double widest = -inf;
      for (const auto& s : view_.points())
        if (s.cmax < 0.0) {
          any = true;
          widest = std::max(widest, s.cmax);
        }
      if (any) margin_ = std::min(0.0, widest);
      margin_set_ = true;
    }
    std::optional<std::size_t> best;
    double bf = inf;
    for (std::size_t i = 0; i < view_.size(); ++i) {
      if (view_[i].cmax > margin_ || dist(i) <= delta) continue;
      if (view_[i].f < bf) {
        best = i;
        bf = view_[i].f;
      }
    }
    if (best) margin_ = 2.0 * view_[*best].cmax;
    return take(best);
  }

  std::optional<std::size_t> m5() {
    std::optional<std::size_t> best;
    std::size_t bn = 0;
    for (std::size_t i = 0; i < view_.size(); ++i) {
      if (dist(i) <= 0.0) continue;
      const std::size_t n = n_iso(i);
      if (n > bn) {
        best = i;
        bn = n;
      }
    }
    return take(best);
  }

  std::optional<std::size_t> m6() {
    std::optional<std::size_t> best;
    std::size_t bn = 0;
    for (std::size_t i = 0; i < view_.size(); ++i) {
      const std::size_t n = n_density(i);
      if (n > bn) {
        best = i;
        bn = n;
      }
    }
    return take(best);
  }

  std::optional<std::size_t> apply(int method, double delta) {
    switch (method) {
      case 1: return m1();
      case 2: return m2();
      case 3: return m3(delta);
      case 4: return m4(delta);
      case 5: return m5();
      case 6: return m6();
    }
    return std::nullopt;
  }

  double d_min() const { return d_min_; }
  double margin() const { return margin_; }

 private:
  std::optional<std::size_t> take(std::optional<std::size_t> i) {
    if (i) s_.push_back(*i);
    return i;
  }

  const SurrogateCacheView& view_;
  std::vector<Point> xs_;
  std::vector<std::size_t> s_;
  double d_min_ = 0.0;
  double margin_ = 0.0;
  bool margin_set_ = false;
};

}  // namespace ref
