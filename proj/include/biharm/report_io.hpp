#pragma once

// JSON and CSV forms of residual reports, scan tables and ODE traces.
// JSON layout: {meta, config, points[], aggregates, verdict}. No timestamps or
// addresses, so identical runs give identical bytes.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "biharm/harness.hpp"

namespace biharm {

using ojson = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

struct ReportMeta {
  std::string command;               // verify, residual, ...
  std::optional<Verdict> expected;   // catalog verdict, when known
  std::string map_spec;              // inline runs: the map and metric sources
  std::string domain_spec;
  std::string target_spec;
};

ojson report_to_json(const ResidualReport& r, const ReportMeta& meta = {});
/// Inverse of report_to_json. Throws ParseError on schema violations.
ResidualReport report_from_json(const ojson& j, ReportMeta* meta = nullptr);

std::string dump_json(const ojson& j);

/// Shortest decimal that reads back to the same double.
std::string format_number(double v);

inline constexpr const char* kCsvHeader = "x,y,tau1,tau2,tau_norm,bitau1,bitau2,bitau_norm,fd_err";

/// Header plus one line per point; failed points leave the residual cells empty.
std::string report_to_csv(const ResidualReport& r);

/// Parse a CSV written by report_to_csv back into rows of numbers (NaN for empty cells).
std::vector<std::vector<double>> read_csv_rows(const std::string& text);

/// Human-readable summary.
std::string report_to_pretty(const ResidualReport& r, const ReportMeta& meta = {});

ojson scan_to_json(const std::string& id, const std::vector<ScanRow>& rows, const RunInfo& config);
std::string scan_to_csv(const std::vector<ScanRow>& rows);
std::string scan_to_pretty(const std::vector<ScanRow>& rows);

}  // namespace biharm
