#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "walshmeans/step_function.hpp"

namespace walshmeans {

/// A builtin test function with ordered (key, value) parameters, e.g.
/// "spike:6", "random_step:seed=7,sparsity=0.5", "walsh_poly:3=1,5=-0.5".
/// Bare values bind to the function's positional keys in order.
struct FunctionSpec {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;

  std::string to_string() const;
};

FunctionSpec parse_function_spec(const std::string& text);

/// Builtins:
///   indicator(k)            1 on I_k
///   spike(k)                2^k on I_k (unit mass)
///   sawtooth                (j + 1/2) / 2^M on cell j
///   walsh_poly(i=c, ...)    sum c w_i
///   random_step(seed, sparsity, level)
///                           uniform [-1,1) values on rank-`level` cells
///                           (default min(M,10)), a `sparsity` fraction zeroed
/// Every builtin accepts normalize=1 to rescale to unit L1 norm.
StepFunction builtin_function(const FunctionSpec& spec, int resolution);
StepFunction builtin_function(const std::string& text, int resolution);

std::vector<std::string> builtin_names();

/// The standard corpus used by the verification suites, labelled by spec.
std::vector<std::pair<std::string, StepFunction>> standard_corpus(int resolution, std::uint64_t seed);

}  // namespace walshmeans
