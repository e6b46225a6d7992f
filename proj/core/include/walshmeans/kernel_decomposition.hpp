#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "walshmeans/step_function.hpp"

namespace walshmeans {

/// lambda_{n,i}: 1 iff m(n) <= i < |n| and bit i of n is 0. Requires i < |n|.
int lambda_coeff(std::uint64_t n, int i);

/// Frequency block B(n,i) = [lo, hi_exclusive) with lo = n^(i+1) + 2^i.
struct Block {
  std::uint64_t n;
  int i;
  std::uint64_t lo;
  std::uint64_t hi_exclusive;

  std::uint64_t size() const noexcept { return hi_exclusive - lo; }
  bool contains(std::uint64_t k) const noexcept { return lo <= k && k < hi_exclusive; }
  bool operator==(const Block&) const = default;
};

Block block(std::uint64_t n, int i);

/// Blocks B(n,i) for every i with lambda_{n,i} = 1, in increasing i.
std::vector<Block> blocks(std::uint64_t n);

/// The two routes to d_{n,i}: lambda w_n (D_{2^i} - D_{2^{i+1}}) and the
/// closed form -w_{n^(i+1)+2^i} D_{2^i}.
struct DKernelForms {
  StepFunction defining;
  StepFunction closed;
};

DKernelForms d_kernel_forms(std::uint64_t n, int i, int resolution);

/// d_{n,i} at resolution M (> |n|). Zero when lambda_{n,i} = 0. Throws
/// InvariantError if the two forms disagree by more than 1e-10.
StepFunction d_kernel(std::uint64_t n, int i, int resolution);

/// f * d_{n,i}, computed as -w_c E_i(f w_c) with c = lo of B(n,i), O(2^M).
StepFunction block_convolve(const StepFunction& f, std::uint64_t n, int i);

struct DirichletDecomposition {
  std::uint64_t n;
  StepFunction head;            // D_{2^{|n|+1}}
  StepFunction modulated_tail;  // w_n D_{2^{m(n)}}
  std::vector<std::pair<int, StepFunction>> parts;  // (i, d_{n,i}) with lambda_{n,i} = 1
  double residual_sup;
};

/// D_n = D_{2^{|n|+1}} - w_n D_{2^{m(n)}} + sum_i d_{n,i}, with the residual
/// measured against dirichlet_kernel(n, M). Requires |n|+1 <= M.
DirichletDecomposition decompose_dirichlet(std::uint64_t n, int resolution);

/// sup |D_n - w_n sum_i n_i (D_{2^{i+1}} - D_{2^i})|. Requires |n|+1 <= M.
double dirichlet_standard_identity(std::uint64_t n, int resolution);

struct PartialSumParts {
  StepFunction coarse;     // E_{|n|+1} f
  StepFunction modulated;  // w_n E_{m(n)}(f w_n)
  StepFunction block_sum;  // sum_i f * d_{n,i}
};

/// Parts with S_n f = coarse - modulated + block_sum. Requires |n|+1 <= M.
PartialSumParts decompose_partial_sum(const StepFunction& f, std::uint64_t n);

inline constexpr double kDefaultSupportTolerance = 1e-10;

/// {k : |f^(k)| > tol}, ascending.
std::vector<std::uint64_t> spectrum_support(const StepFunction& f,
                                            double tol = kDefaultSupportTolerance);

/// Largest |f^(k)| over k outside [lo, hi).
double spectrum_leakage(const Spectrum& s, std::uint64_t lo, std::uint64_t hi);

}  // namespace walshmeans
