#pragma once

#include <string>

#include "walshmeans/step_function.hpp"
#include "walshmeans/subsequence.hpp"

namespace walshmeans {

// JSON: {"resolution": M, "values": [...]} and {"resolution": M, "coeffs": [...]}.
std::string to_json(const StepFunction& f);
std::string to_json(const Spectrum& s);
StepFunction step_function_from_json(const std::string& text);
Spectrum spectrum_from_json(const std::string& text);

StepFunction load_step_function(const std::string& path);
void save_step_function(const std::string& path, const StepFunction& f);

Subsequence load_sequence_file(const std::string& path);
void save_sequence_file(const std::string& path, const Subsequence& a);

}  // namespace walshmeans
