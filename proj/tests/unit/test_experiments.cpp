#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>

#include "walshmeans/errors.hpp"
#include "walshmeans/experiments.hpp"
#include "walshmeans/io.hpp"
#include "walshmeans/verify.hpp"

using namespace walshmeans;

namespace {

ExperimentConfig config(const std::string& command, int M) {
  ExperimentConfig c;
  c.command = command;
  c.resolution = M;
  return c;
}

std::size_t column(const Report& r, const std::string& name) {
  const auto it = std::find(r.columns.begin(), r.columns.end(), name);
  EXPECT_NE(it, r.columns.end()) << name;
  return static_cast<std::size_t>(it - r.columns.begin());
}

double real(const Report& r, std::size_t row, const std::string& name) {
  const Cell& c = r.rows[row][column(r, name)];
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  return std::get<double>(c);
}

std::string text(const Report& r, std::size_t row, const std::string& name) {
  return std::get<std::string>(r.rows[row][column(r, name)]);
}

}  // namespace

TEST(Config, Validation) {
  EXPECT_NO_THROW(config("converge", 10).validate());
  auto bad = [](auto mutate) {
    ExperimentConfig c = config("converge", 10);
    mutate(c);
    EXPECT_THROW(c.validate(), ConfigError);
  };
  bad([](ExperimentConfig& c) { c.command = "nope"; });
  bad([](ExperimentConfig& c) { c.resolution = 0; });
  bad([](ExperimentConfig& c) { c.resolution = 99; });
  bad([](ExperimentConfig& c) { c.delta = 0.0; });
  bad([](ExperimentConfig& c) { c.delta = 1.5; });
  bad([](ExperimentConfig& c) { c.a1 = 0; });
  bad([](ExperimentConfig& c) { c.sequence = "lacunary"; c.ratio = 1.0; });
  bad([](ExperimentConfig& c) { c.sequence = "polynomial"; c.degree = 0; });
  bad([](ExperimentConfig& c) { c.n_max = 0; });
  bad([](ExperimentConfig& c) { c.lambda_min = -1.0; });
  bad([](ExperimentConfig& c) { c.lambda_max = c.lambda_min / 2; });
  bad([](ExperimentConfig& c) { c.lambda_count = 0; });
  bad([](ExperimentConfig& c) { c.format = "xml"; });
  bad([](ExperimentConfig& c) { c.command = "verify"; c.resolution = 3; });
}

TEST(Config, HashTracksSettings) {
  const ExperimentConfig a = config("converge", 10);
  ExperimentConfig b = a;
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(a.hash().size(), 16u);
  b.delta = 0.6;
  EXPECT_NE(a.hash(), b.hash());
  ExperimentConfig c = a;
  c.seed = 2;
  EXPECT_NE(a.hash(), c.hash());
  EXPECT_EQ(ExperimentConfig{}.effective_resolution(), kDefaultResolution);
}

TEST(Config, NamesAndFiles) {
  EXPECT_TRUE(is_generator_name("minimal_growth"));
  EXPECT_TRUE(is_generator_name("lacunary"));
  EXPECT_TRUE(is_generator_name("polynomial"));
  EXPECT_FALSE(is_generator_name("seq.txt"));
  EXPECT_TRUE(is_function_file("data/f.json"));
  EXPECT_FALSE(is_function_file("spike:3"));
}

TEST(Horizon, ErrorNamesLargestAdmissibleN) {
  ExperimentConfig c = config("converge", 8);
  const Subsequence a = load_sequence(c);
  const std::size_t largest = a.admissible_count(256);
  EXPECT_EQ(resolve_horizon(c, a), largest);
  c.n_max = largest;
  EXPECT_EQ(resolve_horizon(c, a), largest);
  c.n_max = largest + 1;
  try {
    resolve_horizon(c, a);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("largest admissible N is " + std::to_string(largest)), std::string::npos);
  }
}

TEST(Helpers, LogSpacedCounts) {
  EXPECT_EQ(log_spaced_counts(1), (std::vector<std::size_t>{1}));
  EXPECT_EQ(log_spaced_counts(10), (std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7, 8, 10}));
  const auto v = log_spaced_counts(1000);
  EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
  EXPECT_EQ(std::adjacent_find(v.begin(), v.end()), v.end());
  EXPECT_EQ(v.back(), 1000u);
}

TEST(Helpers, Q90NearestRank) {
  std::vector<double> v(10);
  for (int j = 0; j < 10; ++j) v[static_cast<std::size_t>(j)] = -(j + 1.0);
  v.resize(16, 0.0);
  // |g| sorted: 0 x6, 1..10; rank ceil(14.4) = 15 -> 9
  EXPECT_EQ(q90_abs(StepFunction(4, v)), 9.0);
  EXPECT_EQ(q90_abs(StepFunction::constant(0, -2.0)), 2.0);
}

TEST(Converge, PolynomialRowsVanish) {
  ExperimentConfig c = config("converge", 8);
  c.function = "walsh_poly:1=1,3=-0.5";
  c.sequence = "lacunary";
  c.a1 = 4;
  const CommandOutcome out = cmd_converge(c);
  ASSERT_FALSE(out.report.rows.empty());
  for (std::size_t i = 0; i < out.report.rows.size(); ++i) {
    EXPECT_EQ(real(out.report, i, "sup_error"), 0.0);
    EXPECT_EQ(real(out.report, i, "l1_error"), 0.0);
    EXPECT_EQ(text(out.report, i, "config_hash"), c.hash());
  }
}

TEST(Converge, BaselineAndDeterminism) {
  ExperimentConfig c = config("converge", 9);
  c.function = "random_step:seed=4";
  c.fejer_baseline = true;
  const CommandOutcome a = cmd_converge(c);
  const CommandOutcome b = cmd_converge(c);
  EXPECT_EQ(to_csv(a.report), to_csv(b.report));
  bool saw_baseline = false;
  for (std::size_t i = 0; i < a.report.rows.size(); ++i) {
    saw_baseline = saw_baseline || text(a.report, i, "sequence") == "fejer_baseline";
  }
  EXPECT_TRUE(saw_baseline);
}

TEST(Converge, FunctionFileResolution) {
  const auto path = (std::filesystem::temp_directory_path() / "walshmeans_exp_f.json").string();
  save_step_function(path, StepFunction::constant(6, 1.0));
  ExperimentConfig c;
  c.command = "converge";
  c.function = path;
  const CommandOutcome out = cmd_converge(c);
  EXPECT_FALSE(out.report.rows.empty());
  c.resolution = 7;
  EXPECT_THROW(cmd_converge(c), ConfigError);
  c.resolution.reset();
  c.function = "/nonexistent/f.json";
  EXPECT_THROW(cmd_converge(c), IoError);
  std::filesystem::remove(path);
}

TEST(Weaktype, LacunaryStoppedRowsAreZero) {
  ExperimentConfig c = config("weaktype", 10);
  c.function = "random_step:seed=8";
  c.sequence = "lacunary";
  c.a1 = 2;
  c.lambda_count = 9;
  const CommandOutcome out = cmd_weaktype(c);
  std::size_t stopped = 0, summaries = 0;
  for (std::size_t i = 0; i < out.report.rows.size(); ++i) {
    if (text(out.report, i, "row_kind") == "summary") ++summaries;
    if (text(out.report, i, "operator") != "stopped_mean_max") continue;
    ++stopped;
    EXPECT_EQ(real(out.report, i, "level_set_measure"), 0.0);
    EXPECT_EQ(real(out.report, i, "ratio"), 0.0);
  }
  EXPECT_EQ(stopped, 10u);
  EXPECT_EQ(summaries, 3u);
  EXPECT_EQ(out.report.rows.size(), 30u);
}

TEST(Weaktype, ScalingInvariance) {
  ExperimentConfig c = config("weaktype", 9);
  c.function = "random_step:seed=8,level=9";
  c.lambda_min = 0.25;
  c.lambda_max = 4.0;
  c.lambda_count = 5;
  ExperimentConfig scaled = c;
  scaled.function = "random_step:seed=8,level=9,normalize=1";
  const double l1 = load_function(c).l1_norm();
  scaled.lambda_min = c.lambda_min / l1;
  scaled.lambda_max = c.lambda_max / l1;
  const Report a = cmd_weaktype(c).report;
  const Report b = cmd_weaktype(scaled).report;
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(text(a, i, "operator"), text(b, i, "operator"));
    EXPECT_NEAR(real(a, i, "ratio"), real(b, i, "ratio"), 1e-9);
  }
}

TEST(GenSeq, PrefixAndErrors) {
  ExperimentConfig c = config("gen-seq", 10);
  c.format = "seq";
  const Subsequence a = cmd_gen_seq(c);
  EXPECT_LT(a.values().back(), 1024u);
  c.n_max = 5;
  EXPECT_EQ(cmd_gen_seq(c).size(), 5u);
  c.sequence = "lacunary";
  c.n_max = 64;
  try {
    cmd_gen_seq(c);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("largest valid n is 63"), std::string::npos);
  }
  c.sequence = "file.txt";
  EXPECT_THROW(cmd_gen_seq(c), ConfigError);
}

TEST(Verify, ManifestAndSubset) {
  const auto& names = verify_manifest();
  EXPECT_GE(names.size(), 20u);
  EXPECT_EQ(std::adjacent_find(names.begin(), names.end()), names.end());
  ExperimentConfig c = config("verify", 8);
  c.suites = {"transform_naive", "kernel_decomposition"};
  const CommandOutcome out = cmd_verify(c);
  EXPECT_FALSE(out.verification_failed);
  ASSERT_EQ(out.report.rows.size(), 2u);
  EXPECT_EQ(text(out.report, 0, "suite_name"), "kernel_decomposition");
  EXPECT_EQ(text(out.report, 1, "suite_name"), "transform_naive");
  c.suites = {"nope"};
  EXPECT_ANY_THROW(cmd_verify(c));
}

TEST(Verify, NegativeControlAndPowersOfTwo) {
  ExperimentConfig c = config("verify", 8);
  c.suites = {"kernel_decomposition"};
  c.corrupt_kernel = true;
  const CommandOutcome bad = cmd_verify(c);
  EXPECT_TRUE(bad.verification_failed);
  EXPECT_FALSE(bad.failures.empty());
  c.corrupt_kernel = false;
  c.pow2_only = true;
  EXPECT_FALSE(cmd_verify(c).verification_failed);
}

TEST(Verify, EverySuitePassesAtSmallResolution) {
  VerifyOptions o;
  o.resolution = 8;
  o.stopped_lambda_count = 3;
  for (const SuiteResult& r : run_verify(o)) {
    EXPECT_TRUE(r.pass) << r.name << (r.failures.empty() ? "" : ": " + r.failures.front());
    EXPECT_GT(r.instances, 0u) << r.name;
  }
}
