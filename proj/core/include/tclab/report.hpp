#pragma once

#include <string>
#include <vector>

#include "tclab/ergodic.hpp"
#include "tclab/lyapunov.hpp"

namespace tclab {

struct CheckResult {
  std::string name;
  std::string status;  // "pass" | "fail" | "inconclusive"
  double measured = 0.0;
  double tolerance = 0.0;
  double runtime_s = 0.0;
  std::string note;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (c.status == "fail") return false;
    return true;
  }
};

// Shortest round-trip decimal representation; '.' separator, no locale.
std::string format_double(double v);

void write_report_csv(const std::string& path, const VerificationReport& report);
void write_report_json(const std::string& path, const VerificationReport& report,
                       std::uint64_t seed);

struct ExponentCsvRow {
  std::string label;
  std::string point_id;
  double s, t, T, estimate, closed_form, abs_error;
};
void write_exponent_csv(const std::string& path, const std::vector<ExponentCsvRow>& rows);

void write_verdicts_json(const std::string& path, const TimeChangedAction& tca,
                         const std::vector<ExponentField>& fields, const RankOneVerdict& rank_one,
                         const HomogeneityVerdict& homogeneity, std::uint64_t seed);

void write_dispersion_json(const std::string& path, const std::vector<DispersionReport>& reports,
                           const std::pair<double, double>& livsic1,
                           const std::pair<double, double>& livsic2, std::uint64_t seed);

void write_line_csv(const std::string& path, const DispersionReport& report);

// Concatenated summary of whatever per-stage reports exist in the directory.
// Returns 0 if every found check/verdict passes, 1 if any failed, 2 if none
// were found.
int write_summary(const std::string& out_dir, const std::string& summary_path,
                  std::string* rendered_table = nullptr);

}  // namespace tclab
