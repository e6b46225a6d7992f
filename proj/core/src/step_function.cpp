#include "walshmeans/step_function.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include "walshmeans/errors.hpp"

namespace walshmeans {

namespace {

std::atomic<int> g_max_resolution{kDefaultMaxResolution};

void require_finite_dyadic(int resolution, std::span<const double> xs, const char* what) {
  check_resolution(resolution);
  if (xs.size() != (std::size_t{1} << resolution)) {
    throw ArgumentError(std::string(what) + ": length " + std::to_string(xs.size()) +
                        " does not equal 2^" + std::to_string(resolution));
  }
  for (double x : xs) {
    if (!std::isfinite(x)) throw ArgumentError(std::string(what) + ": non-finite value");
  }
}

double pairwise_sum_impl(const double* xs, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += xs[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_impl(xs, half) + pairwise_sum_impl(xs + half, n - half);
}

}  // namespace

int max_resolution() noexcept { return g_max_resolution.load(std::memory_order_relaxed); }

void set_max_resolution(int m) {
  if (m < 0 || m > 30) throw ArgumentError("max resolution must lie in [0, 30]");
  g_max_resolution.store(m, std::memory_order_relaxed);
}

void check_resolution(int m) {
  if (m < 0 || m > max_resolution()) {
    throw ResolutionError("resolution " + std::to_string(m) + " outside [0, " +
                          std::to_string(max_resolution()) + "]");
  }
}

double pairwise_sum(std::span<const double> xs) { return pairwise_sum_impl(xs.data(), xs.size()); }

StepFunction::StepFunction(int resolution, std::vector<double> values)
    : resolution_(resolution), values_(std::move(values)) {
  require_finite_dyadic(resolution_, values_, "StepFunction");
}

StepFunction StepFunction::zero(int resolution) { return constant(resolution, 0.0); }

StepFunction StepFunction::constant(int resolution, double c) {
  check_resolution(resolution);
  return StepFunction(resolution, std::vector<double>(std::size_t{1} << resolution, c));
}

double StepFunction::integral() const {
  return std::ldexp(pairwise_sum(values_), -resolution_);
}

double StepFunction::l1_norm() const {
  std::vector<double> a(values_.size());
  std::transform(values_.begin(), values_.end(), a.begin(), [](double x) { return std::abs(x); });
  return std::ldexp(pairwise_sum(a), -resolution_);
}

double StepFunction::l2_norm_squared() const {
  std::vector<double> a(values_.size());
  std::transform(values_.begin(), values_.end(), a.begin(), [](double x) { return x * x; });
  return std::ldexp(pairwise_sum(a), -resolution_);
}

double StepFunction::sup_norm() const {
  double s = 0.0;
  for (double x : values_) s = std::max(s, std::abs(x));
  return s;
}

StepFunction StepFunction::abs() const {
  StepFunction r = *this;
  for (double& x : r.values_) x = std::abs(x);
  return r;
}

void StepFunction::require_same_resolution(const StepFunction& other) const {
  if (other.resolution_ != resolution_) {
    throw ArgumentError("resolution mismatch: " + std::to_string(resolution_) + " vs " +
                        std::to_string(other.resolution_));
  }
}

StepFunction& StepFunction::operator+=(const StepFunction& other) {
  require_same_resolution(other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  return *this;
}

StepFunction& StepFunction::operator-=(const StepFunction& other) {
  require_same_resolution(other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
  return *this;
}

StepFunction& StepFunction::operator*=(const StepFunction& other) {
  require_same_resolution(other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] *= other.values_[j];
  return *this;
}

StepFunction& StepFunction::operator*=(double c) {
  if (!std::isfinite(c)) throw ArgumentError("non-finite scale factor");
  for (double& x : values_) x *= c;
  return *this;
}

Spectrum::Spectrum(int resolution, std::vector<double> coeffs)
    : resolution_(resolution), coeffs_(std::move(coeffs)) {
  require_finite_dyadic(resolution_, coeffs_, "Spectrum");
}

Spectrum Spectrum::zero(int resolution) {
  check_resolution(resolution);
  return Spectrum(resolution, std::vector<double>(std::size_t{1} << resolution, 0.0));
}

double sup_distance(const StepFunction& a, const StepFunction& b) {
  if (a.resolution() != b.resolution()) throw ArgumentError("resolution mismatch");
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
  return d;
}

}  // namespace walshmeans
