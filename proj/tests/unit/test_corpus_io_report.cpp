#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <limits>

#include "walshmeans/corpus.hpp"
#include "walshmeans/errors.hpp"
#include "walshmeans/io.hpp"
#include "walshmeans/report.hpp"
#include "walshmeans/walsh.hpp"

using namespace walshmeans;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("walshmeans_test_" + name);
}

}  // namespace

TEST(Corpus, Indicators) {
  const StepFunction s = builtin_function("spike:3", 5);
  for (std::size_t j = 0; j < 32; ++j) EXPECT_EQ(s[j], j < 4 ? 8.0 : 0.0);
  EXPECT_DOUBLE_EQ(s.l1_norm(), 1.0);
  EXPECT_EQ(builtin_function("indicator:0", 4), StepFunction::constant(4, 1.0));
  const StepFunction i2 = builtin_function("indicator:k=2", 4);
  EXPECT_DOUBLE_EQ(i2.integral(), 0.25);
  EXPECT_THROW(builtin_function("spike:5", 5), ArgumentError);
}

TEST(Corpus, SawtoothAndPoly) {
  const StepFunction s = builtin_function("sawtooth", 3);
  EXPECT_EQ(s[0], 1.0 / 16);
  EXPECT_EQ(s[7], 15.0 / 16);
  EXPECT_DOUBLE_EQ(s.integral(), 0.5);
  const StepFunction p = builtin_function("walsh_poly:0=2,5=-1", 4);
  const Spectrum c = analyze(p);
  for (std::size_t k = 0; k < 16; ++k) EXPECT_EQ(c[k], k == 0 ? 2.0 : (k == 5 ? -1.0 : 0.0));
  EXPECT_THROW(builtin_function("walsh_poly:16=1", 4), ArgumentError);
  EXPECT_THROW(builtin_function("walsh_poly:x=1", 4), ArgumentError);
}

TEST(Corpus, RandomStepDeterministicAndCoarse) {
  const StepFunction a = builtin_function("random_step:seed=9,level=4", 8);
  EXPECT_EQ(a, builtin_function("random_step:seed=9,level=4", 8));
  EXPECT_NE(a, builtin_function("random_step:seed=10,level=4", 8));
  EXPECT_LE(sup_distance(cond_expect(a, 4), a), 1e-15);
  for (double v : a.values()) {
    EXPECT_GE(v, -1.0);
    EXPECT_LT(v, 1.0);
  }
  const StepFunction all_zero = builtin_function("random_step:seed=1,sparsity=1", 6);
  EXPECT_EQ(all_zero, StepFunction::zero(6));
  EXPECT_THROW(builtin_function("random_step:sparsity=2", 6), ArgumentError);
  EXPECT_THROW(builtin_function("random_step:level=7", 6), ArgumentError);
}

TEST(Corpus, NormalizeAndErrors) {
  const StepFunction n = builtin_function("sawtooth:normalize=1", 6);
  EXPECT_NEAR(n.l1_norm(), 1.0, 1e-15);
  EXPECT_THROW(builtin_function("nope", 4), ArgumentError);
  EXPECT_THROW(builtin_function("spike:1,2", 4), ArgumentError);
  EXPECT_THROW(builtin_function("spike:-1", 4), ArgumentError);
  EXPECT_THROW(builtin_function("spike", 4), ArgumentError);
}

TEST(Corpus, SpecParsing) {
  const FunctionSpec s = parse_function_spec("spike:6");
  EXPECT_EQ(s.name, "spike");
  ASSERT_EQ(s.params.size(), 1u);
  EXPECT_EQ(s.params[0].first, "k");
  EXPECT_EQ(s.to_string(), "spike:k=6");
  EXPECT_EQ(parse_function_spec("sawtooth").to_string(), "sawtooth");
  const auto names = builtin_names();
  for (const char* want : {"indicator", "spike", "sawtooth", "walsh_poly", "random_step"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
  }
}

TEST(Corpus, StandardCorpus) {
  const auto c = standard_corpus(10, 3);
  EXPECT_GE(c.size(), 5u);
  for (const auto& [name, f] : c) {
    EXPECT_EQ(f.resolution(), 10) << name;
    EXPECT_GT(f.l1_norm(), 0.0) << name;
  }
  EXPECT_THROW(standard_corpus(3, 1), ArgumentError);
}

TEST(Io, StepFunctionRoundTrip) {
  const StepFunction f = builtin_function("random_step:seed=3,level=6", 6);
  EXPECT_EQ(step_function_from_json(to_json(f)), f);
  const Spectrum s = analyze(f);
  EXPECT_EQ(spectrum_from_json(to_json(s)), s);
  const auto path = temp_path("f.json");
  save_step_function(path.string(), f);
  EXPECT_EQ(load_step_function(path.string()), f);
  std::filesystem::remove(path);
}

TEST(Io, MalformedJson) {
  EXPECT_THROW(step_function_from_json("{"), ArgumentError);
  EXPECT_THROW(step_function_from_json("[1,2]"), ArgumentError);
  EXPECT_THROW(step_function_from_json(R"({"values":[1,2]})"), ArgumentError);
  EXPECT_THROW(step_function_from_json(R"({"resolution":1})"), ArgumentError);
  EXPECT_THROW(step_function_from_json(R"({"resolution":1,"values":[1,"x"]})"), ArgumentError);
  EXPECT_ANY_THROW(step_function_from_json(R"({"resolution":2,"values":[1,2]})"));
}

TEST(Io, MissingFiles) {
  EXPECT_THROW(load_step_function("/nonexistent/dir/f.json"), IoError);
  EXPECT_THROW(save_step_function("/nonexistent/dir/f.json", StepFunction::zero(1)), IoError);
  EXPECT_THROW(load_sequence_file("/nonexistent/dir/a.txt"), IoError);
}

namespace {

Report sample() {
  Report r;
  r.command = "demo";
  r.metadata = {{"version", std::string("1.0")}, {"m", std::int64_t{5}}};
  r.columns = {"name", "n", "x", "ok"};
  r.add_row({std::string("b"), std::int64_t{2}, 0.1, true});
  r.add_row({std::string("a,\"q\""), std::int64_t{-7}, 1.0 / 3.0, false});
  r.add_row({std::string("a"), std::int64_t{2}, 1e300, true});
  return r;
}

}  // namespace

TEST(Report, RowShapeChecked) {
  Report r = sample();
  EXPECT_THROW(r.add_row({std::int64_t{1}}), ArgumentError);
}

TEST(Report, CsvFormatting) {
  const Report r = sample();
  const std::string csv = to_csv(r);
  EXPECT_EQ(csv,
            "name,n,x,ok\n"
            "b,2,0.10000000000000001,true\n"
            "\"a,\"\"q\"\"\",-7,0.33333333333333331,false\n"
            "a,2,1.0000000000000001e+300,true\n");
  Report empty;
  empty.columns = {"a", "b"};
  EXPECT_EQ(to_csv(empty), "a,b\n");
}

TEST(Report, SeventeenDigitsRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, std::nextafter(1.0, 2.0), 6.02214076e23, -2.2250738585072014e-308}) {
    EXPECT_EQ(std::stod(format_cell(x)), x);
  }
  EXPECT_EQ(format_cell(std::int64_t{-3}), "-3");
  EXPECT_EQ(format_cell(true), "true");
}

TEST(Report, Sorting) {
  Report r = sample();
  r.sort_rows({1, 0});
  EXPECT_EQ(std::get<std::string>(r.rows[0][0]), "a,\"q\"");
  EXPECT_EQ(std::get<std::string>(r.rows[1][0]), "a");
  EXPECT_EQ(std::get<std::string>(r.rows[2][0]), "b");
}

TEST(Report, JsonRoundTrip) {
  const Report r = sample();
  const Report back = report_from_json(to_json(r));
  EXPECT_EQ(back, r);
  Report nan_row;
  nan_row.command = "x";
  nan_row.columns = {"v"};
  nan_row.add_row({std::numeric_limits<double>::quiet_NaN()});
  const std::string text = to_json(nan_row);
  EXPECT_NE(text.find("null"), std::string::npos);
  EXPECT_TRUE(std::isnan(std::get<double>(report_from_json(text).rows[0][0])));
}

TEST(Report, FormatsAndEmit) {
  EXPECT_EQ(parse_report_format("csv"), ReportFormat::csv);
  EXPECT_EQ(parse_report_format("json"), ReportFormat::json);
  EXPECT_THROW(parse_report_format("xml"), ConfigError);
  const auto path = temp_path("r.json");
  emit_report(sample(), ReportFormat::json, path.string());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(report_from_json(ss.str()), sample());
  std::filesystem::remove(path);
  EXPECT_THROW(emit_report(sample(), ReportFormat::csv, "/nonexistent/dir/r.csv"), IoError);
}

TEST(Report, StableHash) {
  // FNV-1a 64 reference values
  EXPECT_EQ(stable_hash(""), "cbf29ce484222325");
  EXPECT_EQ(stable_hash("a"), "af63dc4c8601ec8c");
  EXPECT_NE(stable_hash("delta=0.5"), stable_hash("delta=0.6"));
}
