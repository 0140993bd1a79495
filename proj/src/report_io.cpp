#include "schrodinger_lab/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace schrodinger_lab {
namespace {

std::string str(long long x) { return std::to_string(x); }
std::string str(std::size_t x) { return std::to_string(x); }
std::string str(int x) { return std::to_string(x); }
std::string str(long x) { return std::to_string(x); }
std::string str(bool x) { return x ? "true" : "false"; }

}  // namespace

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvTable blowup_table(const BlowupReport& report) {
  CsvTable t{{"N", "lambda_size", "l2_initial", "l4_mixed", "ratio"}, {}};
  for (const auto& r : report.rows) {
    t.rows.push_back({str(r.N), str(r.lambda_size), format_real(r.l2_initial),
                      format_real(r.l4_mixed), format_real(r.ratio)});
  }
  return t;
}

CsvTable blowup_mechanism_table(const BlowupReport& report) {
  CsvTable t{{"N", "resonant_count", "q_max", "fourth_power", "mechanism_bound"}, {}};
  for (const auto& r : report.rows) {
    t.rows.push_back({str(r.N), str(static_cast<long long>(r.resonant_count)),
                      format_real(r.q_max), format_real(r.fourth_power),
                      format_real(r.mechanism_bound)});
  }
  return t;
}

CsvTable uniformity_table(const UniformityReport& report) {
  CsvTable t{{"N", "trial", "ratio"}, {}};
  for (const auto& r : report.rows) t.rows.push_back({str(r.N), str(r.trial), format_real(r.ratio)});
  return t;
}

CsvTable uniformity_per_N_table(const UniformityReport& report) {
  CsvTable t{{"N", "max_ratio", "min_ratio"}, {}};
  for (const auto& r : report.per_N) {
    t.rows.push_back({str(r.N), format_real(r.max_ratio), format_real(r.min_ratio)});
  }
  return t;
}

CsvTable contrast_table(const UniformityReport& report) {
  CsvTable t{{"N", "lambda_size", "viscous_ratio", "conservative_ratio"}, {}};
  for (const auto& r : report.contrast) {
    t.rows.push_back({str(r.N), str(r.lambda_size), format_real(r.viscous_ratio),
                      format_real(r.conservative_ratio)});
  }
  return t;
}

CsvTable gap_profile_table(const GapReport& report) {
  CsvTable t{{"n", "mu", "gap_to_next", "side"}, {}};
  for (std::size_t i = 0; i < report.profile.size(); ++i) {
    const auto& row = report.profile[i];
    std::string gap;
    std::string side = "peak";
    if (i + 1 < report.profile.size()) gap = format_real(report.profile[i + 1].mu - row.mu);
    if (row.n < report.split) side = "increasing";
    if (row.n > report.split) side = "decreasing";
    t.rows.push_back({str(row.n), format_real(row.mu), gap, side});
  }
  return t;
}

CsvTable gap_summary_table(const std::vector<GapReport>& reports) {
  CsvTable t{{"N", "lambda", "r", "split", "argmax", "constant", "min_increasing_gap",
              "max_decreasing_gap", "increasing_ok", "decreasing_ok", "unimodal"},
             {}};
  for (const auto& g : reports) {
    t.rows.push_back({str(g.N), format_real(g.lambda), str(g.r), str(g.split), str(g.argmax),
                      format_real(g.constant), format_real(g.min_increasing_gap),
                      format_real(g.max_decreasing_gap), str(g.increasing_ok),
                      str(g.decreasing_ok), str(g.unimodal)});
  }
  return t;
}

CsvTable pair_bound_table(const std::vector<PairBoundResult>& results) {
  CsvTable t{{"N", "r", "pairs", "min_ratio", "argmin_n", "argmin_m"}, {}};
  for (const auto& p : results) {
    t.rows.push_back({str(p.N), str(p.r), str(static_cast<long long>(p.pairs)),
                      format_real(p.min_ratio), str(p.argmin_n), str(p.argmin_m)});
  }
  return t;
}

std::string to_csv_string(const CsvTable& table) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
  return os.str();
}

void emit_csv(const CsvTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_csv_string(table);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void Summary::set(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}

void Summary::set(const std::string& key, double value) { set(key, format_real(value)); }

void Summary::check(const std::string& name, bool passed, const std::string& detail) {
  assertions_.push_back({name, passed, detail});
}

bool Summary::all_passed() const noexcept {
  for (const auto& a : assertions_) {
    if (!a.passed) return false;
  }
  return true;
}

std::string Summary::str() const {
  std::ostringstream os;
  for (const auto& [k, v] : entries_) os << k << '=' << v << '\n';
  os << "[assertions]\n";
  for (const auto& a : assertions_) {
    os << a.name << '=' << (a.passed ? "PASS" : "FAIL");
    if (!a.detail.empty()) os << " # " << a.detail;
    os << '\n';
  }
  os << "all_passed=" << (all_passed() ? "true" : "false") << '\n';
  return os.str();
}

void Summary::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << str();
}

}  // namespace schrodinger_lab
