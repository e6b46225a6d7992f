#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace walshmeans {

using Cell = std::variant<bool, std::int64_t, double, std::string>;

/// Tabular experiment output. Metadata holds the config echo and version;
/// timestamps go only into JSON output so CSV stays byte-reproducible.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, Cell>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  /// Stable sort of rows by the given column positions, lexicographically.
  void sort_rows(const std::vector<std::size_t>& key_columns);

  bool operator==(const Report&) const = default;
};

enum class ReportFormat { csv, json };

ReportFormat parse_report_format(const std::string& name);

/// Doubles are written with 17 significant digits.
std::string format_cell(const Cell& c);

void write_csv(std::ostream& out, const Report& r);
void write_json(std::ostream& out, const Report& r);
std::string to_csv(const Report& r);
std::string to_json(const Report& r);
Report report_from_json(const std::string& text);

/// Writes to `path` ("-" is stdout). Throws IoError on failure.
void emit_report(const Report& r, ReportFormat format, const std::string& path);

/// 64-bit FNV-1a of text, as 16 lowercase hex digits.
std::string stable_hash(const std::string& text);

}  // namespace walshmeans
