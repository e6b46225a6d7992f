#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace walshmeans {

inline constexpr int kDefaultMaxResolution = 22;

/// Cap on the resolution M of any StepFunction or Spectrum (default 22,
/// i.e. 32 MB per function). Process-wide; safe to read concurrently.
int max_resolution() noexcept;
void set_max_resolution(int m);

/// Checks 0 <= m <= max_resolution(); throws ResolutionError otherwise.
void check_resolution(int m);

/// Values of an A_M-measurable function on [0,1): entry j is the value on
/// the rank-M cell [j 2^-M, (j+1) 2^-M). All values are finite.
class StepFunction {
 public:
  StepFunction(int resolution, std::vector<double> values);

  static StepFunction zero(int resolution);
  static StepFunction constant(int resolution, double c);

  int resolution() const noexcept { return resolution_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }

  /// Integral over [0,1), pairwise summed.
  double integral() const;
  double l1_norm() const;
  double l2_norm_squared() const;
  double sup_norm() const;

  StepFunction abs() const;
  StepFunction& operator+=(const StepFunction& other);
  StepFunction& operator-=(const StepFunction& other);
  StepFunction& operator*=(const StepFunction& other);
  StepFunction& operator*=(double c);

  friend StepFunction operator+(StepFunction a, const StepFunction& b) { return a += b; }
  friend StepFunction operator-(StepFunction a, const StepFunction& b) { return a -= b; }
  friend StepFunction operator*(StepFunction a, const StepFunction& b) { return a *= b; }
  friend StepFunction operator*(StepFunction a, double c) { return a *= c; }
  friend StepFunction operator*(double c, StepFunction a) { return a *= c; }

  bool operator==(const StepFunction&) const = default;

 private:
  void require_same_resolution(const StepFunction& other) const;

  int resolution_;
  std::vector<double> values_;
};

/// Walsh-Paley coefficients: coeffs[k] is the integral of f * w_k.
class Spectrum {
 public:
  Spectrum(int resolution, std::vector<double> coeffs);

  static Spectrum zero(int resolution);

  int resolution() const noexcept { return resolution_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double operator[](std::size_t k) const { return coeffs_[k]; }

  bool operator==(const Spectrum&) const = default;

 private:
  int resolution_;
  std::vector<double> coeffs_;
};

/// Deterministic pairwise summation; result independent of thread count.
double pairwise_sum(std::span<const double> xs);

/// max_j |a_j - b_j|; resolutions must match.
double sup_distance(const StepFunction& a, const StepFunction& b);

}  // namespace walshmeans
