#include "bmads/report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

namespace bmads {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

std::string run_name(const RunRecord& rec) {
  return rec.problem + "_" + std::string(solver_name(rec.solver)) + "_q" + std::to_string(rec.q) +
         "_s" + std::to_string(rec.seed);
}

namespace {

const char* kTraceHeader =
    "problem,solver,q,seed,block,iteration,phase,evaluations,best_f,best_h,delta_mesh,delta_poll";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void write_trace_csv(std::ostream& os, const RunRecord& rec) {
  os << kTraceHeader << '\n';
  const std::string prefix = rec.problem + "," + std::string(solver_name(rec.solver)) + "," +
                             std::to_string(rec.q) + "," + std::to_string(rec.seed) + ",";
  for (const auto& r : rec.trace) {
    os << prefix << r.block << ',' << r.iteration << ',' << r.phase << ',' << r.evaluations << ','
       << format_double(r.best_f) << ',' << format_double(r.best_h) << ','
       << format_double(r.delta_mesh) << ',' << format_double(r.delta_poll) << '\n';
  }
}

std::vector<RunRecord> read_trace_csv(std::istream& is) {
  std::vector<RunRecord> runs;
  std::map<std::tuple<std::string, std::string, std::size_t, std::uint64_t>, std::size_t> where;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == kTraceHeader) continue;
    const auto f = split(line);
    if (f.size() != 12) throw std::runtime_error("malformed trace row: " + line);
    const auto kind = solver_from_name(f[1]);
    if (!kind) throw std::runtime_error("unknown solver in trace: " + f[1]);
    const std::size_t q = std::stoul(f[2]);
    const std::uint64_t seed = std::stoull(f[3]);
    auto key = std::make_tuple(f[0], f[1], q, seed);
    auto it = where.find(key);
    if (it == where.end()) {
      RunRecord r;
      r.problem = f[0];
      r.solver = *kind;
      r.q = q;
      r.seed = seed;
      runs.push_back(std::move(r));
      it = where.emplace(key, runs.size() - 1).first;
    }
    RunRecord& r = runs[it->second];
    TraceRow row;
    row.block = std::stoul(f[4]);
    row.iteration = std::stoul(f[5]);
    row.phase = f[6];
    row.q = q;
    row.evaluations = std::stoul(f[7]);
    row.best_f = parse_double(f[8]);
    row.best_h = parse_double(f[9]);
    row.delta_mesh = parse_double(f[10]);
    row.delta_poll = parse_double(f[11]);
    r.best_f = row.best_f;
    r.best_h = row.best_h;
    r.evaluations = row.evaluations;
    r.iterations = row.iteration;
    r.trace.push_back(std::move(row));
  }
  return runs;
}

void write_search_report_jsonl(std::ostream& os, const RunRecord& rec) {
  auto num = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return format_double(v);
  };
  for (const auto& e : rec.search_report) {
    nlohmann::json j;
    j["iteration"] = e.iteration;
    j["method"] = e.method;
    j["x"] = e.x;
    j["f_hat"] = num(e.f_hat);
    j["h_hat"] = num(e.h_hat);
    j["f"] = num(e.f);
    j["h"] = num(e.h);
    os << j.dump() << '\n';
  }
}

void write_bench_summary_header(std::ostream& os) {
  os << "problem,solver,q,seed,blocks,iterations,evaluations,best_f,best_h,mesh_underflow,wall_ms\n";
}

void write_bench_summary_row(std::ostream& os, const RunRecord& rec) {
  os << rec.problem << ',' << solver_name(rec.solver) << ',' << rec.q << ',' << rec.seed << ','
     << rec.trace.size() << ',' << rec.iterations << ',' << rec.evaluations << ','
     << format_double(rec.best_f) << ',' << format_double(rec.best_h) << ','
     << (rec.mesh_underflow ? 1 : 0) << ',' << format_double(rec.wall_ms) << '\n';
}

void write_profile_csv(std::ostream& os, const std::vector<ProfileCurve>& curves) {
  os << "q,solver,alpha,proportion\n";
  for (const auto& c : curves)
    for (std::size_t i = 0; i < c.alpha.size(); ++i)
      os << c.q << ',' << c.solver << ',' << format_double(c.alpha[i]) << ',' << format_double(c.proportion[i])
         << '\n';
}

void write_scalability_csv(std::ostream& os, const std::vector<SpeedupCell>& cells) {
  os << "solver,q,speedup,efficiency,pairs,excluded\n";
  for (const auto& c : cells) {
    os << c.solver << ',' << c.q << ',';
    if (c.present)
      os << format_double(c.speedup) << ',' << format_double(c.efficiency);
    else
      os << ',';
    os << ',' << c.pairs << ',' << c.excluded << '\n';
  }
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << "problem,solver,q,runs,min,q1,median,q3,max\n";
  for (const auto& r : rows)
    os << r.problem << ',' << r.solver << ',' << r.q << ',' << r.runs << ','
       << format_double(r.min) << ',' << format_double(r.q1) << ',' << format_double(r.median)
       << ',' << format_double(r.q3) << ',' << format_double(r.max) << '\n';
}

}  // namespace bmads
