#include "contighyp/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "contighyp/errors.hpp"

namespace contighyp {

namespace {

constexpr std::string_view kResultPrefix = "result.";

bool needs_quotes(std::string_view field) {
  return field.find_first_of(",\"\n\r") != std::string_view::npos;
}

void write_field(std::string& out, std::string_view field) {
  if (!needs_quotes(field)) {
    out += field;
    return;
  }
  out += '"';
  for (const char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
}

void write_record(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    write_field(out, fields[i]);
  }
  out += '\n';
}

std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  if (quoted) throw ParseError("unterminated quote in CSV record");
  return fields;
}

std::pair<std::string, std::string> split_comment(std::string_view line) {
  line.remove_prefix(1);
  if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
  const std::size_t eq = line.find(" = ");
  if (eq == std::string_view::npos) throw ParseError("comment line without ' = ': " + std::string(line));
  return {std::string(line.substr(0, eq)), std::string(line.substr(eq + 3))};
}

std::string format_order(const std::optional<double>& order) {
  if (!order) return "none";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", *order);
  return buffer;
}

std::optional<double> parse_order(const std::string& text) {
  if (text == "none") return std::nullopt;
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) throw ParseError("bad observed order '" + text + "'");
  return value;
}

bool parse_flag(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ParseError("expected true or false, got '" + text + "'");
}

Complex complex_at(const std::vector<std::string>& row, std::size_t re, Bits bits) {
  return {Real::parse(row.at(re), bits), Real::parse(row.at(re + 1), bits)};
}

}  // namespace

const char* to_string(OutputFormat format) noexcept {
  switch (format) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::Pretty: return "pretty";
  }
  return "?";
}

std::optional<OutputFormat> parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  if (text == "pretty") return OutputFormat::Pretty;
  return std::nullopt;
}

const std::string& Report::result(std::string_view key) const {
  for (const auto& [k, v] : summary) {
    if (k == key) return v;
  }
  throw ParseError("report has no result '" + std::string(key) + "'");
}

std::string to_csv(const Report& report) {
  std::string out = "# command = " + report.command + "\n";
  for (const auto& [key, value] : report.config) out += "# " + key + " = " + value + "\n";
  write_record(out, report.columns);
  for (const auto& row : report.rows) write_record(out, row);
  for (const auto& [key, value] : report.summary) out += "# " + std::string(kResultPrefix) + key + " = " + value + "\n";
  return out;
}

Report parse_csv(std::string_view text) {
  Report report;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto [key, value] = split_comment(line);
      if (key == "command") {
        report.command = std::move(value);
      } else if (key.starts_with(kResultPrefix)) {
        report.summary.emplace_back(key.substr(kResultPrefix.size()), std::move(value));
      } else {
        report.config.emplace_back(std::move(key), std::move(value));
      }
      continue;
    }
    std::vector<std::string> fields = split_record(line);
    if (!header_seen) {
      report.columns = std::move(fields);
      header_seen = true;
      continue;
    }
    if (fields.size() != report.columns.size()) {
      throw ParseError("CSV record has " + std::to_string(fields.size()) + " fields, header has " +
                       std::to_string(report.columns.size()));
    }
    report.rows.push_back(std::move(fields));
  }
  if (!header_seen) throw ParseError("CSV input has no header row");
  return report;
}

std::string to_json(const Report& report) {
  nlohmann::ordered_json doc;
  doc["command"] = report.command;
  doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.config) doc["config"][key] = value;
  doc["columns"] = report.columns;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json record = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i) record[report.columns[i]] = row[i];
    doc["rows"].push_back(std::move(record));
  }
  doc["result"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.summary) doc["result"][key] = value;
  return doc.dump(2) + "\n";
}

std::string to_pretty(const Report& report) {
  std::ostringstream out;
  out << report.command << "\n";
  std::size_t key_width = 0;
  for (const auto& [key, value] : report.config) key_width = std::max(key_width, key.size());
  for (const auto& [key, value] : report.summary) key_width = std::max(key_width, key.size());
  for (const auto& [key, value] : report.config) {
    out << "  " << key << std::string(key_width - key.size(), ' ') << "  " << value << "\n";
  }
  if (!report.columns.empty()) {
    std::vector<std::size_t> widths(report.columns.size());
    for (std::size_t i = 0; i < widths.size(); ++i) widths[i] = report.columns[i].size();
    for (const auto& row : report.rows) {
      for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
    }
    const auto line = [&](const std::vector<std::string>& fields) {
      std::string text = " ";
      for (std::size_t i = 0; i < fields.size() && i < widths.size(); ++i) {
        text += ' ' + fields[i] + std::string(widths[i] - fields[i].size(), ' ');
      }
      text.erase(text.find_last_not_of(' ') + 1);
      out << text << "\n";
    };
    out << "\n";
    line(report.columns);
    for (const auto& row : report.rows) line(row);
    out << "\n";
  }
  for (const auto& [key, value] : report.summary) {
    out << "  " << key << std::string(key_width - key.size(), ' ') << "  " << value << "\n";
  }
  return out.str();
}

std::string render(const Report& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv: return to_csv(report);
    case OutputFormat::Json: return to_json(report);
    case OutputFormat::Pretty: return to_pretty(report);
  }
  return {};
}

std::string format_number(const Real& x) { return x.to_string(); }

std::string format_flag(bool flag) { return flag ? "true" : "false"; }

Report limit_report_table(const LimitReport& r) {
  Report out;
  out.columns = {"eps", "L_re", "L_im", "est_error", "running_re", "running_im"};
  for (const LimitRow& row : r.rows) {
    out.rows.push_back({format_number(row.eps), format_number(row.value.re), format_number(row.value.im),
                        format_number(row.est_error), format_number(row.running.re), format_number(row.running.im)});
  }
  out.summary = {
      {"extrapolated_re", format_number(r.extrapolated.re)},
      {"extrapolated_im", format_number(r.extrapolated.im)},
      {"rhs_re", format_number(r.rhs.re)},
      {"rhs_im", format_number(r.rhs.im)},
      {"abs_err", format_number(r.abs_err)},
      {"rel_err", format_number(r.rel_err)},
      {"target", format_number(r.target)},
      {"observed_order", format_order(r.observed_order)},
      {"spread", format_number(r.spread)},
      {"perturbed", format_flag(r.perturbed)},
      {"c_used_re", format_number(r.c_used.re)},
      {"c_used_im", format_number(r.c_used.im)},
      {"converged", format_flag(r.converged)},
  };
  return out;
}

LimitReport limit_report_from_table(const Report& table, Bits bits) {
  const std::vector<std::string> expected{"eps", "L_re", "L_im", "est_error", "running_re", "running_im"};
  if (table.columns != expected) throw ParseError("not a limit-scan table");
  const Bits mag = PrecisionContext::kMagnitudeBits;
  LimitReport r;
  for (const auto& row : table.rows) {
    r.rows.push_back({Real::parse(row.at(0), bits), complex_at(row, 1, bits), Real::parse(row.at(3), mag),
                      complex_at(row, 4, bits)});
  }
  const auto real = [&](std::string_view key, Bits b) { return Real::parse(table.result(key), b); };
  r.extrapolated = {real("extrapolated_re", bits), real("extrapolated_im", bits)};
  r.rhs = {real("rhs_re", bits), real("rhs_im", bits)};
  r.abs_err = real("abs_err", mag);
  r.rel_err = real("rel_err", mag);
  r.target = real("target", mag);
  r.observed_order = parse_order(table.result("observed_order"));
  r.spread = real("spread", mag);
  r.perturbed = parse_flag(table.result("perturbed"));
  r.c_used = {real("c_used_re", bits), real("c_used_im", bits)};
  r.converged = parse_flag(table.result("converged"));
  return r;
}

}  // namespace contighyp
