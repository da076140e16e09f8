#include "bmads/solver.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <stdexcept>
#include <thread>

#include "bmads/block_eval.hpp"
#include "bmads/cache.hpp"
#include "bmads/distance.hpp"
#include "bmads/incumbents.hpp"
#include "bmads/lhs.hpp"
#include "bmads/mesh.hpp"
#include "bmads/poll.hpp"
#include "bmads/rng.hpp"
#include "bmads/scaling.hpp"
#include "bmads/selection.hpp"

namespace bmads {

std::string_view solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::mads: return "mads";
    case SolverKind::multistart: return "multistart";
    case SolverKind::lhsearch: return "lhsearch";
    case SolverKind::lowess_a: return "lowess-a";
    case SolverKind::lowess_b: return "lowess-b";
  }
  return "unknown";
}

std::optional<SolverKind> solver_from_name(std::string_view name) {
  std::string s(name);
  std::replace(s.begin(), s.end(), '_', '-');
  for (SolverKind k : kAllSolvers)
    if (solver_name(k) == s) return k;
  return std::nullopt;
}

void SolverConfig::validate() const {
  if (q == 0) throw std::invalid_argument("q must be at least 1");
  if (!(initial_poll > 0.0 && initial_poll <= kMaxPollSize))
    throw std::invalid_argument("initial poll size must lie in (0, 1]");
  search.validate();
}

std::vector<Point> starting_points(const ProblemSpec& spec, std::uint64_t seed, std::size_t run,
                                   std::size_t count) {
  Scaling scaling(spec);
  Rng rng = Rng::derive(seed, "starting-points", run);
  auto unit = lhs_sample(scaling.sample_lower(), scaling.sample_upper(), count, rng);
  std::vector<Point> out;
  out.reserve(unit.size());
  for (const auto& u : unit) out.push_back(scaling.from_unit(u));
  return out;
}

namespace {

bool uses_lowess(SolverKind k) { return k == SolverKind::lowess_a || k == SolverKind::lowess_b; }

struct PendingSearch {
  std::vector<int> methods;
  std::vector<double> f_hat;
  std::vector<double> h_hat;
};

// One MADS instance driven block by block: next_block() proposes the next
// block, consume() folds its evaluations back in.
class Engine {
 public:
  Engine(const SolverConfig& config, SolverKind kind, std::size_t q, const Scaling& scaling,
         Point start_unit, std::uint64_t seed, RunRecord* record)
      : config_(config), kind_(kind), q_(q), scaling_(scaling), bounds_(scaling.unit_bounds()),
        seed_(seed), record_(record), start_(std::move(start_unit)) {
    search_ = config.search;
    if (kind_ == SolverKind::lowess_a) search_.method_cycle = {1, 2};
    if (kind_ == SolverKind::lowess_b) search_.method_cycle = {3, 4, 5, 6};
  }

  std::optional<Block> next_block() {
    if (!started_) {
      started_ = true;
      phase_ = "init";
      Block b;
      b.candidates.push_back(start_);
      return b;
    }
    for (int guard = 0; guard < 1000000; ++guard) {
      if (in_poll_ && poll_next_ < poll_blocks_.size()) {
        phase_ = "poll";
        return poll_blocks_[poll_next_];
      }
      if (in_poll_) {
        finish_iteration(IterationOutcome::failure);
        continue;
      }
      if (mesh_underflow(mesh_)) {
        underflow_ = true;
        return std::nullopt;
      }
      ++iteration_;
      model_.reset();
      pending_ = {};
      std::vector<Point> search = make_search();
      if (!search.empty()) {
        phase_ = "search";
        in_search_ = true;
        Block b;
        b.candidates = std::move(search);
        return b;
      }
      start_poll();
    }
    return std::nullopt;
  }

  void consume(const std::vector<Evaluation>& evals) {
    for (const auto& e : evals) cache_.insert(e);
    auto upd = update_incumbents(inc_, evals);
    inc_ = upd.incumbents;
    if (phase_ == "init") {
      mesh_ = MeshState::initial(poll_center(), config_.initial_poll);
      return;
    }
    if (in_search_) {
      in_search_ = false;
      report_search(evals);
      if (upd.success) {
        finish_iteration(IterationOutcome::search_success);
      } else {
        start_poll();
      }
      return;
    }
    ++poll_next_;
    if (upd.success) finish_iteration(IterationOutcome::poll_success);
  }

  const Incumbents& incumbents() const { return inc_; }
  const MeshState& mesh() const { return mesh_; }
  std::size_t iteration() const { return iteration_; }
  const std::string& phase() const { return phase_; }
  bool underflow() const { return underflow_; }
  const Cache& cache() const { return cache_; }
  Cache& cache() { return cache_; }

 private:
  Point poll_center() const {
    if (const Evaluation* b = inc_.best()) return b->x;
    return start_;
  }

  void finish_iteration(IterationOutcome outcome) {
    in_poll_ = false;
    poll_blocks_.clear();
    poll_next_ = 0;
    mesh_ = update_mesh(mesh_, outcome);
    mesh_.anchor = poll_center();
  }

  // Drops points already in the cache or proposed earlier in the list,
  // keeping the associated metadata aligned.
  template <class Keep>
  std::vector<Point> dedupe(const std::vector<Point>& pts, Keep&& keep) {
    std::vector<Point> out;
    Cache seen;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (cache_.contains(pts[i])) continue;
      Evaluation e;
      e.x = pts[i];
      if (!seen.insert(std::move(e))) continue;
      out.push_back(pts[i]);
      keep(i);
    }
    return out;
  }

  std::vector<Point> make_search() {
    if (kind_ == SolverKind::lhsearch) {
      Rng rng = Rng::derive(seed_, "lhsearch", iteration_);
      auto raw = lhs_sample(scaling_.sample_lower(), scaling_.sample_upper(), q_, rng);
      for (auto& x : raw) x = project_to_mesh(x, mesh_, bounds_);
      return dedupe(raw, [](std::size_t) {});
    }
    if (!uses_lowess(kind_)) return {};

    std::vector<Point> inputs;
    std::vector<std::vector<double>> outputs;
    const auto& entries = cache_.entries();
    for (std::size_t k = entries.size(); k-- > 0 && inputs.size() < config_.training_cap;) {
      const auto& e = entries[k];
      if (e.failed || !e.finite()) continue;
      inputs.push_back(e.x);
      std::vector<double> y{e.f};
      y.insert(y.end(), e.c.begin(), e.c.end());
      outputs.push_back(std::move(y));
    }
    std::reverse(inputs.begin(), inputs.end());
    std::reverse(outputs.begin(), outputs.end());
    auto fit = fit_lowess(inputs, outputs);
    if (!fit) return {};
    if (record_) record_->fits.push_back(fit->diagnostics);
    model_.emplace(std::move(fit->model));

    std::vector<Point> seeds;
    if (inc_.best_feasible) seeds.push_back(inc_.best_feasible->x);
    if (inc_.best_infeasible) seeds.push_back(inc_.best_infeasible->x);
    if (prev_best_feasible_) seeds.push_back(*prev_best_feasible_);
    if (prev_best_infeasible_) seeds.push_back(*prev_best_infeasible_);

    auto solved = solve_surrogate(*model_, bounds_, seeds, search_,
                                  Rng::derive(seed_, "surrogate", iteration_).next());
    prev_best_feasible_.reset();
    prev_best_infeasible_.reset();
    if (solved.best_feasible) prev_best_feasible_ = solved.best_feasible->x;
    if (solved.best_infeasible) prev_best_infeasible_ = solved.best_infeasible->x;

    std::vector<Point> evaluated;
    evaluated.reserve(entries.size());
    for (const auto& e : entries) evaluated.push_back(e.x);
    SelectionState state;
    auto picks = cycle_select(solved.view, evaluated, q_, search_.method_cycle, state,
                              mesh_.delta_mesh);

    std::vector<Point> projected;
    for (std::size_t idx : picks.indices)
      projected.push_back(project_to_mesh(solved.view[idx].x, mesh_, bounds_));
    auto kept = dedupe(projected, [&](std::size_t i) {
      const auto& s = solved.view[picks.indices[i]];
      pending_.methods.push_back(picks.methods[i]);
      pending_.f_hat.push_back(s.f);
      pending_.h_hat.push_back(s.h);
    });
    return kept;
  }

  void start_poll() {
    in_poll_ = true;
    poll_blocks_.clear();
    poll_next_ = 0;
    Rng rng = Rng::derive(seed_, "poll", iteration_);
    SeenPredicate seen = [this](std::span<const double> x) { return cache_.contains(x); };
    auto pts = poll_candidates(mesh_, bounds_, rng, seen);
    auto padded = pad_poll(std::move(pts), q_, mesh_, bounds_, rng, seen);
    auto& cand = padded.points;

    std::vector<std::size_t> order(cand.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (model_) {
      std::vector<double> hh(cand.size()), ff(cand.size());
      for (std::size_t i = 0; i < cand.size(); ++i) {
        auto s = make_surrogate_point(cand[i], model_->predict(cand[i]));
        hh[i] = s.h;
        ff[i] = s.f;
      }
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return precedes(hh[a], ff[a], hh[b], ff[b]);
      });
    } else {
      const Point ref = inc_.best_feasible ? inc_.best_feasible->x : poll_center();
      std::vector<double> d(cand.size());
      for (std::size_t i = 0; i < cand.size(); ++i) d[i] = squared_distance(cand[i], ref);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    }
    std::vector<Point> sorted;
    sorted.reserve(cand.size());
    for (std::size_t i : order) sorted.push_back(std::move(cand[i]));
    poll_blocks_ = split_blocks(sorted, q_);
  }

  void report_search(const std::vector<Evaluation>& evals) {
    if (!record_ || pending_.methods.size() != evals.size()) return;
    for (std::size_t i = 0; i < evals.size(); ++i) {
      SearchReportEntry r;
      r.iteration = iteration_;
      r.method = pending_.methods[i];
      r.x = scaling_.from_unit(evals[i].x);
      r.f_hat = pending_.f_hat[i];
      r.h_hat = pending_.h_hat[i];
      r.f = evals[i].f;
      r.h = evals[i].h;
      record_->search_report.push_back(std::move(r));
    }
  }

  const SolverConfig& config_;
  SolverKind kind_;
  std::size_t q_;
  const Scaling& scaling_;
  const Bounds& bounds_;
  std::uint64_t seed_;
  RunRecord* record_;
  SearchConfig search_;
  Point start_;

  Cache cache_;
  Incumbents inc_;
  MeshState mesh_;
  std::optional<LowessModel> model_;
  std::optional<Point> prev_best_feasible_;
  std::optional<Point> prev_best_infeasible_;
  PendingSearch pending_;

  bool started_ = false;
  bool in_search_ = false;
  bool in_poll_ = false;
  bool underflow_ = false;
  std::vector<Block> poll_blocks_;
  std::size_t poll_next_ = 0;
  std::size_t iteration_ = 0;
  std::string phase_;
};

Blackbox unit_blackbox(const ProblemSpec& problem, const Scaling& scaling, unsigned sleep_ms) {
  return [&problem, &scaling, sleep_ms](std::span<const double> u) {
    if (sleep_ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(sleep_ms));
    const Point x = scaling.from_unit(u);
    return problem.evaluator(x);
  };
}

void fill_best(RunRecord& rec, const Evaluation* best, const Scaling& scaling) {
  if (!best) return;
  rec.best_x = scaling.from_unit(best->x);
  rec.best_f = best->f;
  rec.best_h = best->h;
}

}  // namespace

RunRecord run_solver(const SolverConfig& config, const ProblemSpec& problem,
                     std::span<const Point> starts) {
  config.validate();
  problem.validate();
  const std::size_t q = config.q;
  const std::size_t need = config.kind == SolverKind::multistart ? q : 1;
  if (starts.size() < need) throw std::invalid_argument("not enough starting points");
  for (std::size_t i = 0; i < need; ++i)
    if (starts[i].size() != problem.n) throw std::invalid_argument("starting point dimension mismatch");

  const auto t0 = std::chrono::steady_clock::now();
  Scaling scaling(problem);
  const Blackbox blackbox = unit_blackbox(problem, scaling, config.sleep_ms);
  const std::size_t workers = config.workers == 0 ? q : config.workers;

  RunRecord rec;
  rec.problem = problem.name;
  rec.solver = config.kind;
  rec.q = q;
  rec.seed = config.seed;

  auto clip_start = [&](const Point& s) {
    Point u = scaling.to_unit(s);
    const auto& b = scaling.unit_bounds();
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::clamp(u[i], b.lower[i], b.upper[i]);
    return u;
  };

  if (config.kind != SolverKind::multistart) {
    Engine engine(config, config.kind, q, scaling, clip_start(starts[0]), config.seed, &rec);
    for (std::size_t b = 1; b <= config.block_budget; ++b) {
      auto block = engine.next_block();
      if (!block) break;
      auto evals = evaluate_block(*block, blackbox, engine.cache(), workers);
      rec.evaluations += block->size();
      engine.consume(evals);
      TraceRow row;
      row.block = b;
      row.iteration = engine.iteration();
      row.phase = engine.phase();
      row.q = q;
      row.evaluations = rec.evaluations;
      if (const Evaluation* best = engine.incumbents().best()) {
        row.best_f = best->f;
        row.best_h = best->h;
      }
      row.delta_mesh = engine.mesh().delta_mesh;
      row.delta_poll = engine.mesh().delta_poll;
      rec.trace.push_back(std::move(row));
    }
    rec.iterations = engine.iteration();
    rec.mesh_underflow = engine.underflow();
    fill_best(rec, engine.incumbents().best(), scaling);
  } else {
    SolverConfig inner = config;
    inner.kind = SolverKind::mads;
    inner.q = 1;
    std::vector<std::unique_ptr<Engine>> engines;
    for (std::size_t i = 0; i < q; ++i)
      engines.push_back(std::make_unique<Engine>(inner, SolverKind::mads, 1, scaling,
                                                 clip_start(starts[i]),
                                                 Rng::derive(config.seed, "instance", i).next(),
                                                 nullptr));
    bool all_underflow = false;
    for (std::size_t b = 1; b <= config.block_budget; ++b) {
      Block merged;
      std::vector<std::size_t> owner;
      for (std::size_t i = 0; i < q; ++i) {
        if (auto blk = engines[i]->next_block()) {
          for (auto& c : blk->candidates) {
            merged.candidates.push_back(std::move(c));
            owner.push_back(i);
          }
        }
      }
      if (merged.candidates.empty()) {
        all_underflow = true;
        break;
      }
      Cache scratch;
      auto evals = evaluate_block(merged, blackbox, scratch, workers);
      rec.evaluations += merged.size();
      std::vector<std::vector<Evaluation>> per(q);
      for (std::size_t k = 0; k < evals.size(); ++k) per[owner[k]].push_back(std::move(evals[k]));
      for (std::size_t i = 0; i < q; ++i)
        if (!per[i].empty()) engines[i]->consume(per[i]);

      TraceRow row;
      row.block = b;
      row.phase = "multi";
      row.q = q;
      row.evaluations = rec.evaluations;
      const Engine* leader = engines[0].get();
      for (const auto& e : engines) {
        const Evaluation* cur = e->incumbents().best();
        const Evaluation* lead = leader->incumbents().best();
        if (cur && (!lead || precedes(*cur, *lead))) leader = e.get();
        row.iteration = std::max(row.iteration, e->iteration());
      }
      if (const Evaluation* best = leader->incumbents().best()) {
        row.best_f = best->f;
        row.best_h = best->h;
      }
      row.delta_mesh = leader->mesh().delta_mesh;
      row.delta_poll = leader->mesh().delta_poll;
      rec.trace.push_back(std::move(row));
    }
    const Engine* leader = engines[0].get();
    for (const auto& e : engines) {
      const Evaluation* cur = e->incumbents().best();
      const Evaluation* lead = leader->incumbents().best();
      if (cur && (!lead || precedes(*cur, *lead))) leader = e.get();
      rec.iterations = std::max(rec.iterations, e->iteration());
    }
    rec.mesh_underflow = all_underflow;
    fill_best(rec, leader->incumbents().best(), scaling);
  }

  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

std::uint64_t bench_run_seed(std::uint64_t base_seed, std::size_t run) {
  return Rng::derive(base_seed, "run", run).next();
}

RunRecord run_bench(const SolverConfig& config, const ProblemSpec& problem) {
  const auto starts =
      starting_points(problem, config.seed, 0, std::max<std::size_t>(config.q, 1));
  return run_solver(config, problem, starts);
}

}  // namespace bmads
