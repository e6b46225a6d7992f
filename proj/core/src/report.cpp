#include "walshmeans/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "walshmeans/errors.hpp"

namespace walshmeans {

namespace {

std::string format_double(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const Cell& c) {
  std::string s = format_cell(c);
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_value(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? format_double(*d) : "null";
  if (const auto* s = std::get_if<std::string>(&c)) return json_string(*s);
  return format_cell(c);
}

Cell cell_from_json(const nlohmann::json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return std::nan("");
  throw ArgumentError("report JSON: unsupported value " + j.dump());
}

}  // namespace

void Report::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw ArgumentError("report row has " + std::to_string(row.size()) + " cells, expected " +
                        std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

void Report::sort_rows(const std::vector<std::size_t>& key_columns) {
  std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    for (std::size_t k : key_columns) {
      if (a[k] < b[k]) return true;
      if (b[k] < a[k]) return false;
    }
    return false;
  });
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw ConfigError("unknown report format '" + name + "' (expected csv or json)");
}

std::string format_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else {
          return v;
        }
      },
      c);
}

void write_csv(std::ostream& out, const Report& r) {
  for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << csv_field(r.columns[i]);
  out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const Report& r) {
  out << "{\"metadata\":{\"command\":" << json_string(r.command) << ",\"columns\":[";
  for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << json_string(r.columns[i]);
  out << "]";
  for (const auto& [key, value] : r.metadata) out << "," << json_string(key) << ":" << json_value(value);
  out << "},\"rows\":[";
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    out << (i ? "," : "") << "{";
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
      out << (c ? "," : "") << json_string(r.columns[c]) << ":" << json_value(r.rows[i][c]);
    }
    out << "}";
  }
  out << "]}\n";
}

std::string to_csv(const Report& r) {
  std::ostringstream s;
  write_csv(s, r);
  return s.str();
}

std::string to_json(const Report& r) {
  std::ostringstream s;
  write_json(s, r);
  return s.str();
}

Report report_from_json(const std::string& text) {
  // keep insertion order so metadata round-trips
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::ordered_json::exception& e) {
    throw ArgumentError(std::string("report JSON: ") + e.what());
  }
  Report r;
  const auto& meta = j.at("metadata");
  r.command = meta.at("command").get<std::string>();
  for (const auto& c : meta.at("columns")) r.columns.push_back(c.get<std::string>());
  for (const auto& [key, value] : meta.items()) {
    if (key == "command" || key == "columns") continue;
    r.metadata.emplace_back(key, cell_from_json(value));
  }
  for (const auto& row : j.at("rows")) {
    std::vector<Cell> cells;
    for (const auto& c : r.columns) cells.push_back(cell_from_json(row.at(c)));
    r.rows.push_back(std::move(cells));
  }
  return r;
}

void emit_report(const Report& r, ReportFormat format, const std::string& path) {
  const std::string body = format == ReportFormat::csv ? to_csv(r) : to_json(r);
  if (path == "-") {
    std::cout << body;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing report to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << body;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string stable_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace walshmeans
