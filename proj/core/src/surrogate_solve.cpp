#include "bmads/surrogate_solve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "bmads/cache.hpp"
#include "bmads/lhs.hpp"
#include "bmads/poll.hpp"
#include "bmads/rng.hpp"

namespace bmads {

std::size_t SearchConfig::lhs_budget() const {
  return static_cast<std::size_t>(std::llround(lhs_fraction * static_cast<double>(inner_budget)));
}

std::size_t SearchConfig::vns_budget() const {
  const std::size_t rest = inner_budget - std::min(inner_budget, lhs_budget());
  return static_cast<std::size_t>(std::llround(vns_fraction * static_cast<double>(rest)));
}

std::size_t SearchConfig::poll_budget() const {
  return inner_budget - std::min(inner_budget, lhs_budget() + vns_budget());
}

void SearchConfig::validate() const {
  if (!(lhs_fraction >= 0.0 && lhs_fraction <= 1.0) || !(vns_fraction >= 0.0 && vns_fraction <= 1.0))
    throw std::invalid_argument("search fractions must lie in [0, 1]");
  if (method_cycle.empty()) throw std::invalid_argument("method cycle is empty");
  for (int m : method_cycle)
    if (m < 1 || m > 6) throw std::invalid_argument("selection methods are numbered 1 to 6");
  if (!(inner_initial_poll > 0.0)) throw std::invalid_argument("inner poll size must be positive");
}

namespace {

Point snap_inside(Point x, const Bounds& b) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::clamp(x[i], b.lower[i], b.upper[i]);
    const double g = b.granularity.empty() ? 0.0 : b.granularity[i];
    if (g > 0.0 && std::isfinite(b.lower[i])) {
      double k = std::round((x[i] - b.lower[i]) / g);
      double v = b.lower[i] + k * g;
      if (v > b.upper[i]) v -= g;
      x[i] = v;
    }
  }
  return x;
}

class InnerSolver {
 public:
  InnerSolver(const LowessModel& model, const Bounds& bounds, std::uint64_t seed)
      : model_(model), bounds_(bounds), view_(bounds.size()),
        rng_(Rng::derive(seed, "inner-poll")) {}

  // Index of x in the view, predicting it when new. nullopt once the
  // budget is spent and x is not already known.
  std::optional<std::size_t> eval(const Point& x, std::size_t& budget) {
    if (auto it = index_.find(x); it != index_.end()) return it->second;
    if (budget == 0) return std::nullopt;
    --budget;
    ++predictions_;
    view_.add(make_surrogate_point(x, model_.predict(x)));
    const std::size_t idx = view_.size() - 1;
    index_.emplace(x, idx);
    if (!best_ || surrogate_precedes(view_[idx], view_[*best_])) best_ = idx;
    return idx;
  }

  // Opportunistic poll descent from view entry `start` until the poll size
  // drops below min_poll. Returns the final local incumbent.
  std::size_t descend(std::size_t start, double initial_poll, double min_poll,
                      std::size_t& budget) {
    std::size_t cur = start;
    MeshState mesh = MeshState::initial(view_[cur].x, initial_poll);
    while (mesh.delta_poll >= min_poll && !mesh_underflow(mesh)) {
      const auto cands = poll_candidates(mesh, bounds_, rng_);
      bool improved = false;
      bool exhausted = false;
      for (const auto& c : cands) {
        auto idx = eval(c, budget);
        if (!idx) {
          exhausted = true;
          break;
        }
        if (surrogate_precedes(view_[*idx], view_[cur])) {
          cur = *idx;
          improved = true;
          break;
        }
      }
      if (exhausted) break;
      mesh = update_mesh(mesh, improved ? IterationOutcome::poll_success : IterationOutcome::failure);
      mesh.anchor = view_[cur].x;
    }
    return cur;
  }

  std::optional<std::size_t> best() const { return best_; }
  SurrogateCacheView& view() { return view_; }
  std::size_t predictions() const { return predictions_; }

 private:
  const LowessModel& model_;
  const Bounds& bounds_;
  SurrogateCacheView view_;
  Rng rng_;
  std::unordered_map<Point, std::size_t, CoordinateHash, CoordinateEqual> index_;
  std::optional<std::size_t> best_;
  std::size_t predictions_ = 0;
};

}  // namespace

SurrogateSolveResult solve_surrogate(const LowessModel& model, const Bounds& bounds,
                                     std::span<const Point> seeds, const SearchConfig& config,
                                     std::uint64_t seed) {
  config.validate();
  const std::size_t n = bounds.size();
  InnerSolver inner(model, bounds, seed);

  std::vector<double> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = std::isfinite(bounds.lower[i]) ? bounds.lower[i] : 0.0;
    hi[i] = std::isfinite(bounds.upper[i]) ? bounds.upper[i] : 1.0;
  }
  std::size_t lhs_left = config.lhs_budget();
  Rng lhs_rng = Rng::derive(seed, "inner-lhs");
  for (auto& x : lhs_sample(lo, hi, lhs_left, lhs_rng)) inner.eval(snap_inside(std::move(x), bounds), lhs_left);

  std::size_t poll_left = config.poll_budget() + lhs_left;
  for (const auto& s : seeds) inner.eval(snap_inside(s, bounds), poll_left);

  std::size_t vns_left = config.vns_budget();
  if (inner.best()) {
    inner.descend(*inner.best(), config.inner_initial_poll, config.descent_min_poll, poll_left);
    vns_left += poll_left;

    Rng perturb = Rng::derive(seed, "inner-vns");
    int k = 1;
    std::size_t idle = 0;
    while (vns_left > 0 && idle < 64) {
      const std::size_t before = vns_left;
      const std::size_t incumbent = *inner.best();
      Point x = inner.view()[incumbent].x;
      const auto step = perturb.in_ball(n, k * config.inner_initial_poll);
      for (std::size_t i = 0; i < n; ++i) x[i] += step[i];
      auto start = inner.eval(snap_inside(std::move(x), bounds), vns_left);
      if (!start) break;
      inner.descend(*start, config.inner_initial_poll, config.restart_min_poll, vns_left);
      if (*inner.best() != incumbent) {
        k = 1;
      } else {
        k = k % config.restart_max_k + 1;
      }
      idle = (vns_left == before) ? idle + 1 : 0;
    }
  }

  SurrogateSolveResult out;
  out.view = std::move(inner.view());
  out.predictions = inner.predictions();
  for (const auto& s : out.view.points()) {
    if (s.failed) continue;
    if (s.h == 0.0) {
      if (!out.best_feasible || s.f < out.best_feasible->f) out.best_feasible = s;
    } else if (!out.best_infeasible || precedes(s.h, s.f, out.best_infeasible->h, out.best_infeasible->f)) {
      out.best_infeasible = s;
    }
  }
  return out;
}

}  // namespace bmads
