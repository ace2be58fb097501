#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

namespace iscr {

// Locale-independent, deterministic number text. Nine significant digits
// keeps reruns byte-identical while staying readable.
inline std::string format_number(double value, int significant_digits = 9) {
  if (value == 0.0) return "0";
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), value,
                    std::chars_format::general, significant_digits);
  if (res.ec != std::errc()) {
    throw std::runtime_error("number formatting failed");
  }
  return std::string(buf, res.ptr);
}

inline std::string format_count(long long value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

struct ReportTable {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void validate() const {
    if (header.empty()) {
      throw std::invalid_argument("report table needs a header");
    }
    for (const auto& row : rows) {
      if (row.size() != header.size()) {
        throw std::invalid_argument("report row width differs from header");
      }
    }
  }
};

namespace detail {

inline std::string csv_escape(const std::string& cell) {
  bool needs_quotes = false;
  for (const char c : cell) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') {
      needs_quotes = true;
      break;
    }
  }
  if (!needs_quotes) return cell;
  std::string out = "\"";
  for (const char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline void append_joined(std::string& out, const std::vector<std::string>& row,
                          const char* sep, bool escape) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out += sep;
    out += escape ? csv_escape(row[i]) : row[i];
  }
}

}  // namespace detail

inline std::string to_csv(const ReportTable& table) {
  table.validate();
  std::string out;
  detail::append_joined(out, table.header, ",", true);
  out += '\n';
  for (const auto& row : table.rows) {
    detail::append_joined(out, row, ",", true);
    out += '\n';
  }
  return out;
}

inline std::string to_markdown(const ReportTable& table) {
  table.validate();
  std::string out = "## " + table.name + "\n\n| ";
  detail::append_joined(out, table.header, " | ", false);
  out += " |\n|";
  for (std::size_t i = 0; i < table.header.size(); ++i) out += " --- |";
  out += '\n';
  for (const auto& row : table.rows) {
    out += "| ";
    detail::append_joined(out, row, " | ", false);
    out += " |\n";
  }
  return out;
}

}  // namespace iscr
