#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "schrodinger_lab/experiments.hpp"

namespace schrodinger_lab {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// 17 significant digits; round-trips every double.
std::string format_real(double x);

CsvTable blowup_table(const BlowupReport& report);
CsvTable blowup_mechanism_table(const BlowupReport& report);
CsvTable uniformity_table(const UniformityReport& report);
CsvTable uniformity_per_N_table(const UniformityReport& report);
CsvTable contrast_table(const UniformityReport& report);
CsvTable gap_profile_table(const GapReport& report);
CsvTable gap_summary_table(const std::vector<GapReport>& reports);
CsvTable pair_bound_table(const std::vector<PairBoundResult>& results);

std::string to_csv_string(const CsvTable& table);

// Throws std::runtime_error if the file cannot be written.
void emit_csv(const CsvTable& table, const std::filesystem::path& path);

// key=value lines followed by an [assertions] block of name=PASS|FAIL lines.
class Summary {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void check(const std::string& name, bool passed, const std::string& detail = {});

  [[nodiscard]] bool all_passed() const noexcept;
  [[nodiscard]] std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  struct Assertion {
    std::string name;
    bool passed;
    std::string detail;
  };
  std::vector<std::pair<std::string, std::string>> entries_;
  std::vector<Assertion> assertions_;
};

}  // namespace schrodinger_lab
