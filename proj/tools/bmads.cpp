// bmads: run the solvers, the benchmark matrix, and aggregate the results.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "bmads/metrics.hpp"
#include "bmads/problems.hpp"
#include "bmads/report.hpp"
#include "bmads/rng.hpp"
#include "bmads/solver.hpp"

namespace fs = std::filesystem;
using namespace bmads;

namespace {

struct Options {
  std::vector<std::string> problems;
  std::vector<std::string> solvers;
  std::vector<std::size_t> qs{1};
  std::size_t blocks = 100;
  std::size_t runs = 10;
  std::uint64_t seed = 1;
  double tau = 1e-2;
  std::string out_dir = ".";
  std::size_t threads = 1;
  std::size_t workers = 0;
  unsigned sleep_ms = 0;
};

struct Job {
  ProblemCatalogEntry problem;
  SolverKind solver;
  std::size_t q;
  std::uint64_t run_seed;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

RunRecord execute(const Job& job, const Options& opt) {
  SolverConfig cfg;
  cfg.kind = job.solver;
  cfg.q = job.q;
  cfg.block_budget = opt.blocks;
  cfg.seed = job.run_seed;
  cfg.sleep_ms = opt.sleep_ms;
  cfg.workers = opt.workers;
  return run_bench(cfg, job.problem.spec);
}

void write_run_files(const RunRecord& rec, const Options& opt) {
  std::ostringstream trace, report;
  write_trace_csv(trace, rec);
  write_file(fs::path(opt.out_dir) / ("trace_" + run_name(rec) + ".csv"), trace.str());
  if (!rec.search_report.empty()) {
    write_search_report_jsonl(report, rec);
    write_file(fs::path(opt.out_dir) / ("search_report_" + run_name(rec) + ".jsonl"), report.str());
  }
  if (!rec.fits.empty()) {
    std::string fits;
    for (const auto& d : rec.fits) fits += diagnostics_json(d) + "\n";
    write_file(fs::path(opt.out_dir) / ("fits_" + run_name(rec) + ".jsonl"), fits);
  }
}

ProblemCatalogEntry problem_or_throw(const std::string& name) {
  auto p = find_problem(name);
  if (!p) throw CLI::ValidationError("--problem", "unknown problem '" + name + "'");
  return *p;
}

SolverKind solver_or_throw(const std::string& name) {
  auto s = solver_from_name(name);
  if (!s) throw CLI::ValidationError("--solver", "unknown solver '" + name + "'");
  return *s;
}

int cmd_run(const Options& opt) {
  fs::create_directories(opt.out_dir);
  Job job{problem_or_throw(opt.problems.at(0)), solver_or_throw(opt.solvers.at(0)), opt.qs.at(0),
          opt.seed};
  const RunRecord rec = execute(job, opt);
  write_run_files(rec, opt);
  std::printf("%s: best f = %s, h = %s after %zu blocks (%zu evaluations)\n", run_name(rec).c_str(),
              format_double(rec.best_f).c_str(), format_double(rec.best_h).c_str(),
              rec.trace.size(), rec.evaluations);
  return 0;
}

int cmd_bench(Options opt) {
  fs::create_directories(opt.out_dir);
  if (opt.problems.empty()) opt.problems = problem_names();
  if (opt.solvers.empty())
    for (SolverKind k : kAllSolvers) opt.solvers.emplace_back(solver_name(k));

  std::vector<Job> jobs;
  for (const auto& p : opt.problems) {
    const auto problem = problem_or_throw(p);
    for (const auto& s : opt.solvers)
      for (std::size_t q : opt.qs)
        for (std::size_t r = 0; r < opt.runs; ++r)
          jobs.push_back({problem, solver_or_throw(s), q, bench_run_seed(opt.seed, r)});
  }

  std::vector<RunRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex log;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      records[k] = execute(jobs[k], opt);
      write_run_files(records[k], opt);
      std::lock_guard lock(log);
      std::fprintf(stderr, "[%zu/%zu] %s f=%s h=%s\n", k + 1, jobs.size(), run_name(records[k]).c_str(),
                   format_double(records[k].best_f).c_str(), format_double(records[k].best_h).c_str());
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::max<std::size_t>(opt.threads, 1); ++t) pool.emplace_back(worker);
  }

  std::ostringstream summary;
  write_bench_summary_header(summary);
  for (const auto& r : records) write_bench_summary_row(summary, r);
  write_file(fs::path(opt.out_dir) / "bench_summary.csv", summary.str());
  return 0;
}

std::string tau_label(double tau) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", tau);
  return buf;
}

int cmd_profiles(const Options& opt) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(opt.out_dir)) {
    const auto name = entry.path().filename().string();
    if (name.rfind("trace_", 0) == 0 && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error("no trace_*.csv files in " + opt.out_dir);

  std::vector<RunRecord> records;
  for (const auto& f : files) {
    std::ifstream is(f, std::ios::binary);
    auto runs = read_trace_csv(is);
    records.insert(records.end(), runs.begin(), runs.end());
  }

  std::map<std::string, double> f_star;
  std::vector<std::size_t> qs;
  for (const auto& r : records) {
    if (!f_star.count(r.problem)) f_star[r.problem] = problem_or_throw(r.problem).best_known_f;
    if (std::find(qs.begin(), qs.end(), r.q) == qs.end()) qs.push_back(r.q);
  }
  std::sort(qs.begin(), qs.end());

  const auto alphas = default_alpha_grid();
  std::vector<ProfileCurve> curves;
  for (std::size_t q : qs) {
    auto c = performance_profile(records, q, opt.tau, f_star, alphas);
    curves.insert(curves.end(), c.begin(), c.end());
  }
  std::ostringstream prof, scal, summ;
  write_profile_csv(prof, curves);
  write_scalability_csv(scal, speedup_efficiency(records));
  const auto rows = summary_table(records, f_star);
  write_summary_csv(summ, rows);
  write_file(fs::path(opt.out_dir) / ("profiles_tau" + tau_label(opt.tau) + ".csv"), prof.str());
  write_file(fs::path(opt.out_dir) / "scalability.csv", scal.str());
  write_file(fs::path(opt.out_dir) / "summary.csv", summ.str());

  std::printf("%-8s %-11s %4s %4s %12s %12s %12s %12s %12s\n", "problem", "solver", "q", "runs", "min",
              "q1", "median", "q3", "max");
  for (const auto& r : rows)
    std::printf("%-8s %-11s %4zu %4zu %12.4g %12.4g %12.4g %12.4g %12.4g\n", r.problem.c_str(),
                r.solver.c_str(), r.q, r.runs, r.min, r.q1, r.median, r.q3, r.max);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blackbox optimization with block-parallel MADS and LOWESS-guided search"};
  app.require_subcommand(1);
  Options opt;

  auto* run = app.add_subcommand("run", "single run, writes its trace CSV");
  run->add_option("--problem", opt.problems, "tcsd, vessel or welded")->required()->expected(1);
  run->add_option("--solver", opt.solvers, "mads, multistart, lhsearch, lowess-a, lowess-b")
      ->required()
      ->expected(1);
  run->add_option("--q", opt.qs, "block size")->expected(1);

  auto* bench = app.add_subcommand("bench", "problems x solvers x q x runs");
  bench->add_option("--problem", opt.problems, "problems (default: all)")->delimiter(',');
  bench->add_option("--solver", opt.solvers, "solvers (default: all)")->delimiter(',');
  bench->add_option("--q", opt.qs, "block sizes, e.g. 1,8")->delimiter(',');
  bench->add_option("--runs", opt.runs, "runs per cell");
  bench->add_option("--threads", opt.threads, "concurrent runs");

  auto* profiles = app.add_subcommand("profiles", "aggregate the trace CSVs of --out-dir");
  profiles->add_option("--tau", opt.tau, "relative tolerance of the profiles");

  for (auto* sub : {run, bench}) {
    sub->add_option("--blocks", opt.blocks, "block evaluations per run");
    sub->add_option("--seed", opt.seed, "base seed");
    sub->add_option("--workers", opt.workers, "concurrent blackbox calls per block (0: q)");
    sub->add_option("--sleep-ms", opt.sleep_ms, "delay per blackbox call (debug)");
  }
  for (auto* sub : {run, bench, profiles}) sub->add_option("--out-dir", opt.out_dir, "output directory");

  try {
    app.parse(argc, argv);
    for (std::size_t q : opt.qs)
      if (q == 0) throw CLI::ValidationError("--q", "block size must be at least 1");
    if (*run) return cmd_run(opt);
    if (*bench) return cmd_bench(opt);
    return cmd_profiles(opt);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "bmads: %s\n", e.what());
    return 1;
  }
}
