#include "walshmeans/kernel_decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "walshmeans/errors.hpp"
#include "walshmeans/walsh.hpp"

namespace walshmeans {

namespace {

constexpr double kFormTolerance = 1e-10;

void require_bit_position(std::uint64_t n, int i) {
  const BitProfile p = bit_profile(n);
  if (i < 0 || i >= p.top) {
    throw ArgumentError("bit position " + std::to_string(i) + " outside [0, |n|) for n = " +
                        std::to_string(n));
  }
}

void require_head_fits(std::uint64_t n, int resolution) {
  const BitProfile p = bit_profile(n);
  if (p.top + 1 > resolution) {
    throw ResolutionError("n = " + std::to_string(n) + " needs resolution >= " + std::to_string(p.top + 1));
  }
}

}  // namespace

int lambda_coeff(std::uint64_t n, int i) {
  require_bit_position(n, i);
  const BitProfile p = bit_profile(n);
  return (i >= p.bottom && ((n >> i) & 1u) == 0) ? 1 : 0;
}

Block block(std::uint64_t n, int i) {
  require_bit_position(n, i);
  const std::uint64_t lo = truncate(n, i + 1) + (std::uint64_t{1} << i);
  return Block{n, i, lo, lo + (std::uint64_t{1} << i)};
}

std::vector<Block> blocks(std::uint64_t n) {
  const BitProfile p = bit_profile(n);
  std::vector<Block> out;
  for (int i = p.bottom; i < p.top; ++i) {
    if (lambda_coeff(n, i) == 1) out.push_back(block(n, i));
  }
  return out;
}

DKernelForms d_kernel_forms(std::uint64_t n, int i, int resolution) {
  const int lambda = lambda_coeff(n, i);
  require_head_fits(n, resolution);
  if (lambda == 0) return {StepFunction::zero(resolution), StepFunction::zero(resolution)};

  const StepFunction lower = dirichlet_kernel(std::uint64_t{1} << i, resolution);
  const StepFunction upper = dirichlet_kernel(std::uint64_t{1} << (i + 1), resolution);
  StepFunction defining = walsh_function(n, resolution) * (lower - upper);
  StepFunction closed = -1.0 * (walsh_function(block(n, i).lo, resolution) * lower);
  return {std::move(defining), std::move(closed)};
}

StepFunction d_kernel(std::uint64_t n, int i, int resolution) {
  DKernelForms forms = d_kernel_forms(n, i, resolution);
  const double gap = sup_distance(forms.defining, forms.closed);
  if (gap > kFormTolerance) {
    throw InvariantError("d_{" + std::to_string(n) + "," + std::to_string(i) +
                         "}: defining and closed forms differ by " + std::to_string(gap));
  }
  return std::move(forms.closed);
}

StepFunction block_convolve(const StepFunction& f, std::uint64_t n, int i) {
  const int lambda = lambda_coeff(n, i);
  require_head_fits(n, f.resolution());
  if (lambda == 0) return StepFunction::zero(f.resolution());
  return -1.0 * character_projection(f, block(n, i).lo, i);
}

DirichletDecomposition decompose_dirichlet(std::uint64_t n, int resolution) {
  require_head_fits(n, resolution);
  const BitProfile p = bit_profile(n);
  DirichletDecomposition d{
      n,
      dirichlet_kernel(std::uint64_t{1} << (p.top + 1), resolution),
      walsh_function(n, resolution) * dirichlet_kernel(std::uint64_t{1} << p.bottom, resolution),
      {},
      0.0,
  };
  StepFunction assembled = d.head - d.modulated_tail;
  for (int i = p.bottom; i < p.top; ++i) {
    if (lambda_coeff(n, i) == 0) continue;
    StepFunction part = d_kernel(n, i, resolution);
    assembled += part;
    d.parts.emplace_back(i, std::move(part));
  }
  d.residual_sup = sup_distance(dirichlet_kernel(n, resolution), assembled);
  return d;
}

double dirichlet_standard_identity(std::uint64_t n, int resolution) {
  require_head_fits(n, resolution);
  const BitProfile p = bit_profile(n);
  StepFunction sum = StepFunction::zero(resolution);
  for (int i = 0; i <= p.top; ++i) {
    if (((n >> i) & 1u) == 0) continue;
    sum += dirichlet_kernel(std::uint64_t{1} << (i + 1), resolution);
    sum -= dirichlet_kernel(std::uint64_t{1} << i, resolution);
  }
  return sup_distance(dirichlet_kernel(n, resolution), walsh_function(n, resolution) * sum);
}

PartialSumParts decompose_partial_sum(const StepFunction& f, std::uint64_t n) {
  const int M = f.resolution();
  require_head_fits(n, M);
  const BitProfile p = bit_profile(n);
  PartialSumParts parts{cond_expect(f, p.top + 1), character_projection(f, n, p.bottom),
                        StepFunction::zero(M)};
  for (int i = p.bottom; i < p.top; ++i) {
    if (lambda_coeff(n, i) == 1) parts.block_sum += block_convolve(f, n, i);
  }
  return parts;
}

std::vector<std::uint64_t> spectrum_support(const StepFunction& f, double tol) {
  if (!(tol > 0.0)) throw ArgumentError("spectrum_support: tolerance must be positive");
  const Spectrum s = analyze(f);
  std::vector<std::uint64_t> support;
  for (std::uint64_t k = 0; k < s.size(); ++k) {
    if (std::abs(s[k]) > tol) support.push_back(k);
  }
  return support;
}

double spectrum_leakage(const Spectrum& s, std::uint64_t lo, std::uint64_t hi) {
  double leak = 0.0;
  for (std::uint64_t k = 0; k < s.size(); ++k) {
    if (k < lo || k >= hi) leak = std::max(leak, std::abs(s[k]));
  }
  return leak;
}

}  // namespace walshmeans
