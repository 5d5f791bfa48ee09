#pragma once

#include "bcwp/cli/config.hpp"
#include "bcwp/elliptic/pbsc.hpp"
#include "bcwp/exponents/classifier.hpp"

#include <string>
#include <vector>

namespace bcwp::cli {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// One CSV file: a header row and string cells.
struct CsvSeries {
  std::string name;  ///< file stem suffix, "<prefix>_<name>.csv"
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string to_csv() const;
};

struct RunReport {
  Json document;  ///< artifact, command, resolved config, results, status, exit_code
  std::vector<CsvSeries> series;
  int exit_code = 0;
};

/// Shortest text that reads back to the same double; "nan"/"inf" spelled out.
std::string format_number(double x);

/// Grid coordinates of every point followed by one column per named field.
CsvSeries field_series(const std::string& name, const std::vector<std::pair<std::string, const geometry::ScalarField*>>& fields);

Json to_json(const exponents::RegimeReport& r);
Json to_json(const elliptic::SolveOutcome& o);
Json to_json(const elliptic::SweepReport& r);

/// CSV series of a report: one per curve (fields, sweep indicator, regime series).
std::vector<CsvSeries> emit_plot_data(const RunReport& report);

/// Scalars of the results as "path = value" lines, arrays and the config echo skipped.
std::string key_value_summary(const Json& document);

/// Writes <prefix>_report.json, <prefix>_summary.txt and every series to `dir`; returns the paths.
std::vector<std::string> write_outputs(const RunReport& report, const std::string& dir, const std::string& prefix);

}  // namespace bcwp::cli
