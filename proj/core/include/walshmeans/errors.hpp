#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace walshmeans {

/// Precondition on an argument value failed (out-of-range index, n = 0, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested object is not representable at the given resolution.
class ResolutionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A sequence generator would exceed the 62-bit integer range.
class GenerationError : public std::runtime_error {
 public:
  GenerationError(const std::string& what, std::size_t largest_valid_n)
      : std::runtime_error(what), largest_valid_n_(largest_valid_n) {}

  std::size_t largest_valid_n() const noexcept { return largest_valid_n_; }

 private:
  std::size_t largest_valid_n_;
};

/// An identity that must hold on every instance was violated at runtime.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Invalid experiment configuration (CLI exit code 3).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Reading or writing a file failed (CLI exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace walshmeans
