#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "walshmeans/report.hpp"
#include "walshmeans/step_function.hpp"
#include "walshmeans/subsequence.hpp"

namespace walshmeans {

inline constexpr int kDefaultResolution = 13;

struct ExperimentConfig {
  std::string command = "converge";
  std::optional<int> resolution;  // taken from a function file when unset, else 13

  // "minimal_growth", "lacunary", "polynomial", or a sequence file path
  std::string sequence = "minimal_growth";
  double delta = 0.5;
  std::uint64_t a1 = 1;
  double ratio = 2.0;
  int degree = 2;
  std::optional<std::size_t> n_max;

  // builtin spec ("spike:6") or a path ending in .json
  std::string function = "spike:6";

  double lambda_min = 1.0 / 256.0;
  double lambda_max = 256.0;
  std::size_t lambda_count = 33;

  std::uint64_t seed = 1;
  std::string out = "-";
  std::string format = "csv";

  bool fejer_baseline = false;  // converge
  bool pow2_only = false;       // verify
  bool corrupt_kernel = false;  // verify negative control
  std::vector<std::string> suites;  // verify subset

  /// Throws ConfigError on anything that can be checked without I/O.
  void validate() const;
  int effective_resolution() const;
  /// Stable key=value listing of every setting that affects rows.
  std::string canonical() const;
  std::string hash() const;
};

bool is_generator_name(const std::string& sequence);
bool is_function_file(const std::string& function);

/// Generated until a(n) >= 2^M (or the 62-bit limit), or read from file.
Subsequence load_sequence(const ExperimentConfig& config);
StepFunction load_function(const ExperimentConfig& config);

/// Largest N with a(N) < 2^M, or config.n_max after checking it against that.
std::size_t resolve_horizon(const ExperimentConfig& config, const Subsequence& a);

struct CommandOutcome {
  Report report;
  bool verification_failed = false;
  std::vector<std::string> failures;
};

CommandOutcome cmd_verify(const ExperimentConfig& config);
CommandOutcome cmd_converge(const ExperimentConfig& config);
CommandOutcome cmd_weaktype(const ExperimentConfig& config);
/// Sequence values a(1..N) where N is n_max or the resolution horizon.
Subsequence cmd_gen_seq(const ExperimentConfig& config);

/// round(2^{t/4}) for t = 0, 1, ... up to n_max, deduplicated, plus n_max.
std::vector<std::size_t> log_spaced_counts(std::size_t n_max);

/// Nearest-rank 90th percentile of |g| over cells.
double q90_abs(const StepFunction& g);

std::string library_version();

}  // namespace walshmeans
