#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bmads/metrics.hpp"
#include "bmads/solver.hpp"

namespace bmads {

/// 17 significant digits; infinities as "inf" / "-inf".
std::string format_double(double v);
double parse_double(const std::string& s);

/// Base name shared by the files of one run: <problem>_<solver>_q<q>_s<seed>.
std::string run_name(const RunRecord& rec);

void write_trace_csv(std::ostream& os, const RunRecord& rec);
/// Reads every run found in a trace CSV (rows are grouped by problem, solver, q and seed).
std::vector<RunRecord> read_trace_csv(std::istream& is);

void write_search_report_jsonl(std::ostream& os, const RunRecord& rec);

/// One row per run: problem, solver, q, seed, final best and counts.
void write_bench_summary_header(std::ostream& os);
void write_bench_summary_row(std::ostream& os, const RunRecord& rec);

void write_profile_csv(std::ostream& os, const std::vector<ProfileCurve>& curves);
void write_scalability_csv(std::ostream& os, const std::vector<SpeedupCell>& cells);
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);

}  // namespace bmads
