#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "contighyp/limit.hpp"

namespace contighyp {

enum class OutputFormat { Csv, Json, Pretty };

const char* to_string(OutputFormat format) noexcept;
std::optional<OutputFormat> parse_output_format(std::string_view text);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Format-neutral command output: a config echo, a table and a summary.
///
/// CSV layout: "# key = value" lines for the config, the header row, one
/// record per row, then "# result.key = value" lines for the summary.
struct Report {
  std::string command;
  KeyValues config;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  KeyValues summary;

  /// Summary value by key; throws ParseError when absent.
  const std::string& result(std::string_view key) const;

  friend bool operator==(const Report&, const Report&) = default;
};

std::string to_csv(const Report& report);
std::string to_json(const Report& report);
std::string to_pretty(const Report& report);
std::string render(const Report& report, OutputFormat format);

/// Inverse of to_csv. Throws ParseError on malformed input.
Report parse_csv(std::string_view text);

/// Scientific notation with enough digits to round-trip at the value's precision.
std::string format_number(const Real& x);
std::string format_flag(bool flag);

/// Table form of a limit scan. Complex fields are split into _re/_im columns.
Report limit_report_table(const LimitReport& report);

/// Rebuilds the in-memory report. `bits` is the working precision of the
/// values (the config echo's "bits"); error fields use the magnitude precision.
LimitReport limit_report_from_table(const Report& table, Bits bits);

}  // namespace contighyp
