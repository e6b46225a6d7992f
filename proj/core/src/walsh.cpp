#include "walshmeans/walsh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "walshmeans/errors.hpp"

namespace walshmeans {

namespace {

std::uint64_t cell_count(int resolution) { return std::uint64_t{1} << resolution; }

void require_cell(std::uint64_t j, int resolution) {
  if (j >= cell_count(resolution)) {
    throw ArgumentError("cell index " + std::to_string(j) + " out of range for resolution " +
                        std::to_string(resolution));
  }
}

// out[k] = in[rev(k)], walking the reversed counter incrementally.
void bit_reversal_permute(std::span<const double> in, std::span<double> out, int bits) {
  const std::uint64_t n = in.size();
  if (bits == 0) {
    out[0] = in[0];
    return;
  }
  std::uint64_t r = 0;
  const std::uint64_t top = std::uint64_t{1} << (bits - 1);
  for (std::uint64_t k = 0; k < n; ++k) {
    out[k] = in[r];
    std::uint64_t mask = top;
    while (r & mask) {
      r ^= mask;
      mask >>= 1;
    }
    r |= mask;
  }
}

}  // namespace

std::vector<std::vector<double>> abs_average_pyramid(const StepFunction& f) {
  const int M = f.resolution();
  std::vector<std::vector<double>> levels(M + 1);
  levels[M].resize(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) levels[M][j] = std::abs(f[j]);
  for (int m = M - 1; m >= 0; --m) {
    const auto& finer = levels[m + 1];
    auto& coarse = levels[m];
    coarse.resize(cell_count(m));
    for (std::size_t j = 0; j < coarse.size(); ++j) coarse[j] = 0.5 * (finer[2 * j] + finer[2 * j + 1]);
  }
  return levels;
}

std::uint64_t dyadic_add(std::uint64_t j, std::uint64_t k, int resolution) {
  check_resolution(resolution);
  require_cell(j, resolution);
  require_cell(k, resolution);
  return j ^ k;
}

BitProfile bit_profile(std::uint64_t n) {
  if (n == 0) throw ArgumentError("bit_profile: |0| and m(0) are undefined");
  return BitProfile{n, 63 - std::countl_zero(n), std::countr_zero(n)};
}

std::uint64_t truncate(std::uint64_t n, int j) {
  if (j < 0) throw ArgumentError("truncate: negative bit position");
  if (j >= 64) return 0;
  return n & ~((std::uint64_t{1} << j) - 1);
}

std::uint64_t bit_reverse(std::uint64_t x, int bits) noexcept {
  std::uint64_t r = 0;
  for (int b = 0; b < bits; ++b) r |= ((x >> b) & 1u) << (bits - 1 - b);
  return r;
}

int walsh_eval(std::uint64_t n, std::uint64_t j, int resolution) {
  check_resolution(resolution);
  if (n >= cell_count(resolution)) {
    throw ResolutionError("w_" + std::to_string(n) + " is not A_" + std::to_string(resolution) +
                          "-measurable");
  }
  require_cell(j, resolution);
  return (std::popcount(n & bit_reverse(j, resolution)) & 1) ? -1 : 1;
}

StepFunction walsh_function(std::uint64_t n, int resolution) {
  check_resolution(resolution);
  if (n >= cell_count(resolution)) {
    throw ResolutionError("w_" + std::to_string(n) + " is not A_" + std::to_string(resolution) +
                          "-measurable");
  }
  // popcount(n & rev(j)) == popcount(rev(n) & j)
  const std::uint64_t nr = bit_reverse(n, resolution);
  std::vector<double> v(cell_count(resolution));
  for (std::uint64_t j = 0; j < v.size(); ++j) v[j] = (std::popcount(nr & j) & 1) ? -1.0 : 1.0;
  return StepFunction(resolution, std::move(v));
}

void fwht_inplace(std::span<double> xs) {
  const std::size_t n = xs.size();
  if (n == 0 || !std::has_single_bit(n)) throw ArgumentError("fwht: length must be a power of two");
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double x = xs[j];
        const double y = xs[j + h];
        xs[j] = x + y;
        xs[j + h] = x - y;
      }
    }
  }
}

Spectrum analyze(const StepFunction& f) {
  const int M = f.resolution();
  std::vector<double> h(f.values().begin(), f.values().end());
  fwht_inplace(h);
  std::vector<double> c(h.size());
  bit_reversal_permute(h, c, M);
  const double scale = std::ldexp(1.0, -M);
  for (double& x : c) x *= scale;
  return Spectrum(M, std::move(c));
}

StepFunction synthesize(const Spectrum& s) {
  const int M = s.resolution();
  std::vector<double> h(s.size());
  bit_reversal_permute(s.coeffs(), h, M);
  fwht_inplace(h);
  return StepFunction(M, std::move(h));
}

StepFunction dirichlet_kernel(std::uint64_t n, int resolution) {
  check_resolution(resolution);
  const std::uint64_t size = cell_count(resolution);
  if (n > size) {
    throw ResolutionError("D_" + std::to_string(n) + " needs resolution > " + std::to_string(resolution));
  }
  if (n == 0) return StepFunction::zero(resolution);
  if (std::has_single_bit(n)) {
    // D_{2^m} = 2^m on I_m
    std::vector<double> v(size, 0.0);
    std::fill_n(v.begin(), size / n, static_cast<double>(n));
    return StepFunction(resolution, std::move(v));
  }
  std::vector<double> c(size, 0.0);
  std::fill_n(c.begin(), n, 1.0);
  return synthesize(Spectrum(resolution, std::move(c)));
}

StepFunction fejer_kernel(std::uint64_t n, int resolution) {
  check_resolution(resolution);
  if (n == 0) throw ArgumentError("K_0 is undefined");
  const std::uint64_t size = cell_count(resolution);
  if (n > size) {
    throw ResolutionError("K_" + std::to_string(n) + " needs resolution > " + std::to_string(resolution));
  }
  // coefficient of w_k is #{1 <= l <= n : k < l} / n
  std::vector<double> c(size, 0.0);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::uint64_t k = 0; k < n; ++k) c[k] = static_cast<double>(n - k) * inv;
  return synthesize(Spectrum(resolution, std::move(c)));
}

StepFunction partial_sum(const StepFunction& f, std::uint64_t n) {
  const int M = f.resolution();
  const std::uint64_t size = cell_count(M);
  if (n > size) {
    throw ResolutionError("S_" + std::to_string(n) + " needs resolution > " + std::to_string(M));
  }
  if (n == 0) return StepFunction::zero(M);
  if (n == size) return f;
  const Spectrum s = analyze(f);
  std::vector<double> c(s.coeffs().begin(), s.coeffs().end());
  std::fill(c.begin() + static_cast<std::ptrdiff_t>(n), c.end(), 0.0);
  return synthesize(Spectrum(M, std::move(c)));
}

StepFunction cond_expect(const StepFunction& f, int m) {
  const int M = f.resolution();
  if (m < 0 || m > M) {
    throw ResolutionError("E_" + std::to_string(m) + " requested at resolution " + std::to_string(M));
  }
  const std::size_t block = std::size_t{1} << (M - m);
  const double inv = std::ldexp(1.0, m - M);
  std::vector<double> v(f.size());
  const auto values = f.values();
  for (std::size_t start = 0; start < v.size(); start += block) {
    const double mean = pairwise_sum(values.subspan(start, block)) * inv;
    std::fill_n(v.begin() + static_cast<std::ptrdiff_t>(start), block, mean);
  }
  return StepFunction(M, std::move(v));
}

StepFunction dyadic_convolve(const StepFunction& f, const StepFunction& g) {
  if (f.resolution() != g.resolution()) throw ArgumentError("dyadic_convolve: resolution mismatch");
  const Spectrum a = analyze(f);
  const Spectrum b = analyze(g);
  std::vector<double> c(a.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] * b[k];
  return synthesize(Spectrum(f.resolution(), std::move(c)));
}

StepFunction character_projection(const StepFunction& f, std::uint64_t c, int i) {
  const int M = f.resolution();
  if (i < 0 || i > M) throw ResolutionError("character_projection: rank outside [0, M]");
  if (c >= cell_count(M)) throw ResolutionError("w_" + std::to_string(c) + " is not A_" + std::to_string(M) + "-measurable");
  const std::uint64_t cr = bit_reverse(c, M);
  auto sign = [cr](std::uint64_t j) { return (std::popcount(cr & j) & 1) ? -1.0 : 1.0; };
  const std::size_t block = std::size_t{1} << (M - i);
  const double inv = std::ldexp(1.0, i - M);
  std::vector<double> v(f.size());
  for (std::uint64_t j = 0; j < v.size(); ++j) v[j] = f[j] * sign(j);
  for (std::size_t start = 0; start < v.size(); start += block) {
    const double mean = pairwise_sum(std::span<const double>(v).subspan(start, block)) * inv;
    for (std::size_t j = start; j < start + block; ++j) v[j] = mean * sign(j);
  }
  return StepFunction(M, std::move(v));
}

StepFunction dyadic_maximal(const StepFunction& f) {
  const int M = f.resolution();
  const auto levels = abs_average_pyramid(f);
  std::vector<double> best = levels[0];
  for (int m = 1; m <= M; ++m) {
    std::vector<double> next(levels[m].size());
    for (std::size_t j = 0; j < next.size(); ++j) next[j] = std::max(best[j >> 1], levels[m][j]);
    best = std::move(next);
  }
  return StepFunction(M, std::move(best));
}

}  // namespace walshmeans
