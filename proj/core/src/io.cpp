#include "walshmeans/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "walshmeans/errors.hpp"

namespace walshmeans {

namespace {

using nlohmann::json;

json parse_object(const std::string& text, const char* what) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string(what) + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) throw ArgumentError(std::string(what) + ": expected a JSON object");
  return j;
}

std::pair<int, std::vector<double>> read_array(const json& j, const char* key, const char* what) {
  if (!j.contains("resolution") || !j["resolution"].is_number_integer()) {
    throw ArgumentError(std::string(what) + ": missing integer field 'resolution'");
  }
  if (!j.contains(key) || !j[key].is_array()) {
    throw ArgumentError(std::string(what) + ": missing array field '" + key + "'");
  }
  std::vector<double> xs;
  xs.reserve(j[key].size());
  for (const auto& x : j[key]) {
    if (!x.is_number()) throw ArgumentError(std::string(what) + ": non-numeric entry");
    xs.push_back(x.get<double>());
  }
  return {j["resolution"].get<int>(), std::move(xs)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace

std::string to_json(const StepFunction& f) {
  const json j{{"resolution", f.resolution()}, {"values", std::vector<double>(f.values().begin(), f.values().end())}};
  return j.dump();
}

std::string to_json(const Spectrum& s) {
  const json j{{"resolution", s.resolution()}, {"coeffs", std::vector<double>(s.coeffs().begin(), s.coeffs().end())}};
  return j.dump();
}

StepFunction step_function_from_json(const std::string& text) {
  auto [m, xs] = read_array(parse_object(text, "StepFunction"), "values", "StepFunction");
  return StepFunction(m, std::move(xs));
}

Spectrum spectrum_from_json(const std::string& text) {
  auto [m, xs] = read_array(parse_object(text, "Spectrum"), "coeffs", "Spectrum");
  return Spectrum(m, std::move(xs));
}

StepFunction load_step_function(const std::string& path) { return step_function_from_json(read_file(path)); }

void save_step_function(const std::string& path, const StepFunction& f) { write_file(path, to_json(f) + "\n"); }

Subsequence load_sequence_file(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_sequence(in);
}

void save_sequence_file(const std::string& path, const Subsequence& a) {
  std::ostringstream out;
  write_sequence(out, a);
  write_file(path, out.str());
}

}  // namespace walshmeans
