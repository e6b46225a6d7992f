#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace walshmeans {

struct SuiteResult {
  std::string name;
  std::size_t instances = 0;
  double max_residual = 0.0;
  bool pass = true;
  std::vector<std::string> failures;  // first few failing instances
};

struct VerifyOptions {
  int resolution = 13;
  std::uint64_t seed = 1;
  bool pow2_only = false;       // restrict kernel suites to n = 2^k
  bool corrupt_kernel = false;  // negative control: perturb one d-part per n
  std::size_t stopped_lambda_count = 9;  // grid 2^-8..2^8 for the stopped-sum suite
  std::vector<std::string> only;  // run a subset (all suites when empty)
};

/// Names of every suite cmd_verify must run, in execution order.
const std::vector<std::string>& verify_manifest();

SuiteResult run_suite(const std::string& name, const VerifyOptions& options);

/// Runs the manifest (or options.only) and checks every requested suite ran.
std::vector<SuiteResult> run_verify(const VerifyOptions& options);

}  // namespace walshmeans
