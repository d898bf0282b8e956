#include "zagreb/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "zagreb/errors.hpp"
#include "zagreb/rng.hpp"

namespace zagreb {

namespace {

constexpr int kValueDigits = 12;
constexpr int kZDigits = 6;
constexpr int kFloatExactDigits = 30;

ReportRow base_row(const ModelSpec& model, std::uint64_t n, std::string quantity) {
  ReportRow row;
  row.model = model.name();
  row.params = model.params();
  row.n = n;
  row.quantity = std::move(quantity);
  return row;
}

std::string exact_text(const Rational& value, Regime regime) {
  if (regime == Regime::Exact) return to_fraction_string(value);
  return to_decimal_string(mpf_class(value, kEvaluationBits), kFloatExactDigits);
}

std::string optional_number(const std::optional<double>& v, int digits) {
  return v ? format_number(*v, digits) : std::string{};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// z-score row; exact equality with zero standard error counts as a pass.
ReportRow gate_row(const ModelSpec& model, std::uint64_t n, std::string quantity, std::string exact,
                   double difference, bool exactly_equal, double empirical, double se, double gate) {
  ReportRow row = base_row(model, n, std::move(quantity));
  row.exact = std::move(exact);
  row.empirical = empirical;
  row.se = se;
  if (se > 0) {
    row.z = difference / se;
    row.pass = std::abs(*row.z) <= gate;
  } else {
    row.pass = exactly_equal;
    if (!exactly_equal) row.z = difference > 0 ? HUGE_VAL : -HUGE_VAL;
  }
  return row;
}

}  // namespace

std::string format_number(double value, int significant_digits) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", significant_digits, value);
  return buffer;
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw DomainError("unknown format '" + name + "' (expected csv or json)");
}

bool Report::all_passed() const {
  for (const ReportRow& row : rows) {
    if (row.pass && !*row.pass) return false;
  }
  return true;
}

Report moment_table_report(const MomentTable& table) {
  Report report;
  report.command = "exact";
  report.model = table.model;
  for (const MomentRow& r : table.rows) {
    auto add = [&](const char* quantity, const Rational& value) {
      ReportRow row = base_row(table.model, r.n, quantity);
      row.exact = exact_text(value, r.regime);
      row.regime = to_string(r.regime);
      report.rows.push_back(std::move(row));
    };
    add("mean_Z", r.mean_z);
    add("second_Z", r.second_z);
    add("var_Z", r.var_z);
    if (r.third_z) add("third_Z", *r.third_z);
    if (r.mean_y) add("mean_Y", *r.mean_y);
    if (r.mean_x) add("mean_X", *r.mean_x);
    if (r.mixed_zy) add("mixed_ZY", *r.mixed_zy);
    if (r.skewness_z) {
      ReportRow row = base_row(table.model, r.n, "skew_Z");
      row.exact = to_decimal_string(*r.skewness_z, kFloatExactDigits);
      row.regime = to_string(r.regime);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

Report oracle_report(const ExactDistribution& dist) {
  Report report;
  report.command = "oracle";
  report.model = dist.model;
  auto add = [&](const char* quantity, const Rational& value) {
    ReportRow row = base_row(dist.model, dist.n, quantity);
    row.exact = to_fraction_string(value);
    report.rows.push_back(std::move(row));
  };
  const Rational mean = moment(dist, IndexKind::Z, 1);
  const Rational second = moment(dist, IndexKind::Z, 2);
  const Rational third = moment(dist, IndexKind::Z, 3);
  const Rational var = second - mean * mean;
  add("mean_Z", mean);
  add("second_Z", second);
  add("var_Z", var);
  add("third_Z", third);
  add("mean_Y", moment(dist, IndexKind::Y, 1));
  add("mean_X", moment(dist, IndexKind::X, 1));
  add("mixed_ZY", mixed_moment(dist, 1, 1));
  if (var > 0) {
    ReportRow row = base_row(dist.model, dist.n, "skew_Z");
    const Rational mu3 = third - 3 * mean * second + 2 * mean * mean * mean;
    row.exact = to_decimal_string(standardized_third_moment(mu3, var), kFloatExactDigits);
    report.rows.push_back(std::move(row));
  }

  nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
  for (const auto& [triple, p] : dist.atoms) {
    atoms.push_back({{"Z", to_string(triple.z)},
                     {"Y", to_string(triple.y)},
                     {"X", to_string(triple.x)},
                     {"p", to_fraction_string(p)}});
  }
  report.extra["atoms"] = std::move(atoms);
  return report;
}

Report sample_report(const SampleSummary& summary) {
  Report report;
  report.command = "simulate";
  report.model = summary.model;
  report.seed = summary.seed;
  report.replicates = summary.replicates;
  report.wall_time = summary.wall_time;

  ReportRow mean = base_row(summary.model, summary.n, "mean_Z");
  mean.empirical = summary.mean().get_d();
  mean.se = summary.se_mean();
  report.rows.push_back(std::move(mean));

  ReportRow var = base_row(summary.model, summary.n, "var_Z");
  var.empirical = summary.variance().get_d();
  if (summary.replicates >= 4) var.se = summary.se_variance();
  report.rows.push_back(std::move(var));

  if (summary.replicates >= 3 && summary.central_moment(2) > 0) {
    ReportRow skew = base_row(summary.model, summary.n, "skew_Z");
    skew.empirical = summary.skewness();
    skew.se = summary.se_skewness_robust();
    report.rows.push_back(std::move(skew));
  }
  if (summary.ks_statistic) {
    ReportRow ks = base_row(summary.model, summary.n, "ks_D");
    ks.empirical = *summary.ks_statistic;
    report.rows.push_back(std::move(ks));
  }

  report.extra["power_sums"] = {{"sum_Z", summary.sums.s1.get_str()},
                                {"sum_Z2", summary.sums.s2.get_str()},
                                {"sum_Z3", summary.sums.s3.get_str()},
                                {"sum_Z4", summary.sums.s4.get_str()},
                                {"sum_Z5", summary.sums.s5.get_str()},
                                {"sum_Z6", summary.sums.s6.get_str()}};
  report.extra["mean"] = to_fraction_string(summary.mean());
  report.extra["variance"] = to_fraction_string(summary.variance());
  return report;
}

Report compare_report(const MomentRow& exact, const SampleSummary& summary, double gate) {
  Report report;
  report.command = "compare";
  report.model = summary.model;
  report.seed = summary.seed;
  report.replicates = summary.replicates;
  report.gate = gate;
  report.wall_time = summary.wall_time;
  report.extra["gate_kind"] = "engineering threshold on |z|; no finite-n convergence rate is available";
  const std::uint64_t n = summary.n;

  const Rational mean = summary.mean();
  report.rows.push_back(gate_row(summary.model, n, "mean_Z", to_fraction_string(exact.mean_z),
                                 Rational(mean - exact.mean_z).get_d(), mean == exact.mean_z,
                                 mean.get_d(), summary.se_mean(), gate));

  const Rational var = summary.variance();
  const double var_se = summary.replicates >= 4 ? summary.se_variance() : 0.0;
  report.rows.push_back(gate_row(summary.model, n, "var_Z", to_fraction_string(exact.var_z),
                                 Rational(var - exact.var_z).get_d(), var == exact.var_z, var.get_d(),
                                 var_se, gate));

  if (exact.skewness_z && summary.replicates >= 3 && summary.central_moment(2) > 0) {
    const double exact_skew = exact.skewness_z->get_d();
    const double skew = summary.skewness();
    report.rows.push_back(gate_row(summary.model, n, "skew_Z",
                                   to_decimal_string(*exact.skewness_z, kFloatExactDigits),
                                   skew - exact_skew, false, skew, summary.se_skewness_robust(), gate));
  }
  return report;
}

Report audit_report(const AuditReport& audit) {
  Report report;
  report.command = "audit";
  report.model = audit.model;
  for (const AuditEntry& e : audit.entries) {
    if (e.exact) {
      ReportRow row = base_row(audit.model, e.n, e.quantity + ":delta");
      row.exact = to_fraction_string(*e.delta);
      report.rows.push_back(std::move(row));
    } else {
      ReportRow row = base_row(audit.model, e.n, e.quantity + ":residual/" + e.remainder_order);
      row.exact = to_fraction_string(e.recurrence);
      row.empirical = e.residual;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

void write_csv(const Report& report, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const ReportRow& row : report.rows) {
    out << csv_field(row.model) << ',' << csv_field(row.params) << ',' << row.n << ','
        << csv_field(row.quantity) << ',' << row.exact << ',' << optional_number(row.empirical, kValueDigits)
        << ',' << optional_number(row.se, kValueDigits) << ',' << optional_number(row.z, kZDigits) << '\n';
  }
}

nlohmann::ordered_json to_json(const Report& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = report.command;
  j["model"] = report.model.name();
  j["params"] = report.model.params();
  if (report.replicates) j["replicates"] = *report.replicates;
  if (report.gate) j["gate"] = *report.gate;

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ReportRow& row : report.rows) {
    nlohmann::ordered_json r;
    r["model"] = row.model;
    r["params"] = row.params;
    r["n"] = row.n;
    r["quantity"] = row.quantity;
    r["exact"] = row.exact.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(row.exact);
    r["empirical"] = row.empirical ? nlohmann::ordered_json(*row.empirical) : nlohmann::ordered_json();
    r["se"] = row.se ? nlohmann::ordered_json(*row.se) : nlohmann::ordered_json();
    // JSON has no infinity; an unbounded z is written as a string.
    if (row.z && std::isfinite(*row.z)) {
      r["z"] = *row.z;
    } else if (row.z) {
      r["z"] = format_number(*row.z, kZDigits);
    } else {
      r["z"] = nullptr;
    }
    if (row.pass) r["pass"] = *row.pass;
    if (!row.regime.empty()) r["regime"] = row.regime;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  for (const auto& [key, value] : report.extra.items()) j[key] = value;

  nlohmann::ordered_json meta;
  if (report.seed) meta["seed"] = *report.seed;
  meta["rng_algorithm"] = std::string(RngStream::kAlgorithm);
  meta["version"] = ZAGREB_VERSION;
  meta["wall_time"] = report.wall_time;
  j["metadata"] = std::move(meta);
  return j;
}

void emit(const Report& report, ReportFormat format, const std::string& path, std::ostream& fallback) {
  auto write = [&](std::ostream& out) {
    if (format == ReportFormat::Csv) {
      write_csv(report, out);
    } else {
      out << to_json(report).dump(2) << '\n';
    }
  };
  if (path.empty() || path == "-") {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output path '" + path + "' for writing");
  write(file);
  file.flush();
  if (!file) throw std::runtime_error("failed writing report to '" + path + "'");
}

}  // namespace zagreb
