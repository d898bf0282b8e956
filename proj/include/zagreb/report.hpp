#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zagreb/closed_forms.hpp"
#include "zagreb/model.hpp"
#include "zagreb/moments.hpp"
#include "zagreb/oracle.hpp"
#include "zagreb/rational.hpp"
#include "zagreb/replicates.hpp"

namespace zagreb {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kCsvHeader = "model,params,n,quantity,exact,empirical,se,z";

enum class ReportFormat { Csv, Json };

ReportFormat parse_report_format(const std::string& name);

/// One line of a report. `exact` is either a canonical "p/q" rational or,
/// for quantities that are not rational (skewness, float-regime rows), a
/// decimal string.
struct ReportRow {
  std::string model;
  std::string params;
  std::uint64_t n = 0;
  std::string quantity;
  std::string exact;
  std::optional<double> empirical;
  std::optional<double> se;
  std::optional<double> z;
  std::optional<bool> pass;
  std::string regime;
};

struct Report {
  std::string command;
  ModelSpec model = ModelSpec::port();
  std::vector<ReportRow> rows;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> replicates;
  std::optional<double> gate;
  double wall_time = 0.0;
  /// Command-specific JSON members (atoms, power sums, ...).
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  bool all_passed() const;
};

/// Report of every quantity in every row of a moment table.
Report moment_table_report(const MomentTable& table);

/// Moments of an exact distribution, plus its atoms (JSON only).
Report oracle_report(const ExactDistribution& dist);

/// Empirical moments of a simulation run.
Report sample_report(const SampleSummary& summary);

/// Exact-versus-empirical rows for mean, variance and (where the exact third
/// moment is known) skewness. A row passes when |z| <= gate, or when the
/// standard error is zero and the values agree exactly.
Report compare_report(const MomentRow& exact, const SampleSummary& summary, double gate);

Report audit_report(const AuditReport& audit);

void write_csv(const Report& report, std::ostream& out);
nlohmann::ordered_json to_json(const Report& report);

/// Writes the report to `path` ("-" or empty for `fallback`).
void emit(const Report& report, ReportFormat format, const std::string& path, std::ostream& fallback);

/// "%.*g" formatting used by every numeric report column.
std::string format_number(double value, int significant_digits);

}  // namespace zagreb
