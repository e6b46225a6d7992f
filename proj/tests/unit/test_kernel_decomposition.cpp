#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "walshmeans/errors.hpp"
#include "walshmeans/kernel_decomposition.hpp"
#include "walshmeans/walsh.hpp"

using namespace walshmeans;

namespace {

std::vector<double> vals(const StepFunction& f) { return {f.values().begin(), f.values().end()}; }

// d_{n,i} = w_n (D_{2^i} - D_{2^{i+1}}) from direct summation
std::vector<double> d_oracle(std::uint64_t n, int i, int M) {
  const auto lo = oracle::dirichlet(std::uint64_t{1} << i, M);
  const auto hi = oracle::dirichlet(std::uint64_t{1} << (i + 1), M);
  std::vector<double> d(lo.size());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = oracle::walsh(n, j, M) * (lo[j] - hi[j]);
  return d;
}

}  // namespace

TEST(LambdaCoeff, Examples) {
  EXPECT_EQ(lambda_coeff(5, 1), 1);
  EXPECT_EQ(lambda_coeff(5, 0), 0);
  for (int k = 1; k < 10; ++k) {
    for (int i = 0; i < k; ++i) EXPECT_EQ(lambda_coeff(std::uint64_t{1} << k, i), 0);
  }
  EXPECT_EQ(lambda_coeff(6, 0), 0);
  EXPECT_EQ(lambda_coeff(6, 1), 0);
  EXPECT_THROW(lambda_coeff(5, 2), ArgumentError);
  EXPECT_THROW(lambda_coeff(5, -1), ArgumentError);
}

TEST(Blocks, Examples) {
  const Block b = block(5, 1);
  EXPECT_EQ(b.lo, 6u);
  EXPECT_EQ(b.hi_exclusive, 8u);
  const auto nine = blocks(9);
  ASSERT_EQ(nine.size(), 2u);
  EXPECT_EQ(nine[0].lo, 10u);
  EXPECT_EQ(nine[0].hi_exclusive, 12u);
  EXPECT_EQ(nine[1].lo, 12u);
  EXPECT_EQ(nine[1].hi_exclusive, 16u);
  for (int k = 0; k < 20; ++k) EXPECT_TRUE(blocks(std::uint64_t{1} << k).empty());
  EXPECT_THROW(block(5, 2), ArgumentError);
}

TEST(Blocks, DisjointOrderedInsideShell) {
  for (std::uint64_t n = 1; n < (1u << 14); ++n) {
    const auto bl = blocks(n);
    const int top = bit_profile(n).top;
    for (std::size_t p = 0; p < bl.size(); ++p) {
      ASSERT_GE(bl[p].lo, std::uint64_t{1} << top);
      ASSERT_LE(bl[p].hi_exclusive, std::uint64_t{2} << top);
      ASSERT_EQ(bl[p].size(), std::uint64_t{1} << bl[p].i);
      if (p > 0) ASSERT_LT(bl[p - 1].hi_exclusive - 1, bl[p].lo);
    }
  }
}

TEST(DKernel, Examples) {
  EXPECT_EQ(d_kernel(6, 0, 4), StepFunction::zero(4));
  EXPECT_EQ(vals(d_kernel(5, 1, 3)), (std::vector<double>{-2, 2, 2, -2, 0, 0, 0, 0}));
  const auto s = spectrum_support(d_kernel(5, 1, 3));
  EXPECT_EQ(s, (std::vector<std::uint64_t>{6, 7}));
  const Spectrum c = analyze(d_kernel(5, 1, 3));
  EXPECT_EQ(c[6], -1.0);
  EXPECT_EQ(c[7], -1.0);
  EXPECT_THROW(d_kernel(5, 1, 2), ResolutionError);
}

TEST(DKernel, FormsMatchOracle) {
  const int M = 8;
  for (std::uint64_t n = 1; n < 128; ++n) {
    const int top = bit_profile(n).top;
    for (int i = 0; i < top; ++i) {
      const DKernelForms forms = d_kernel_forms(n, i, M);
      ASSERT_LE(sup_distance(forms.defining, forms.closed), 1e-12);
      const auto expected = lambda_coeff(n, i) ? d_oracle(n, i, M) : std::vector<double>(1u << M, 0.0);
      ASSERT_EQ(vals(forms.closed), expected) << "n=" << n << " i=" << i;
    }
  }
}

TEST(Decomposition, FiveAtResolutionThree) {
  const DirichletDecomposition d = decompose_dirichlet(5, 3);
  EXPECT_EQ(vals(d.head), (std::vector<double>{8, 0, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(d.modulated_tail, walsh_function(5, 3));
  ASSERT_EQ(d.parts.size(), 1u);
  EXPECT_EQ(d.parts[0].first, 1);
  EXPECT_EQ(d.residual_sup, 0.0);
  const StepFunction sum = d.head - d.modulated_tail + d.parts[0].second;
  EXPECT_EQ(vals(sum), oracle::dirichlet(5, 3));
}

TEST(Decomposition, PowersOfTwoHaveNoParts) {
  for (int k = 0; k < 9; ++k) {
    const DirichletDecomposition d = decompose_dirichlet(std::uint64_t{1} << k, 10);
    EXPECT_TRUE(d.parts.empty());
    EXPECT_EQ(d.residual_sup, 0.0);
  }
}

TEST(Decomposition, AgreesWithDirectSummation) {
  const int M = 7;
  for (std::uint64_t n = 1; n < 64; ++n) {
    const DirichletDecomposition d = decompose_dirichlet(n, M);
    StepFunction assembled = d.head - d.modulated_tail;
    for (const auto& [i, part] : d.parts) assembled += part;
    ASSERT_EQ(vals(assembled), oracle::dirichlet(n, M)) << "n=" << n;
    ASSERT_LE(d.residual_sup, 1e-12);
  }
  EXPECT_NO_THROW(decompose_dirichlet(64, 7));
  EXPECT_THROW(decompose_dirichlet(128, 7), ResolutionError);
}

TEST(StandardIdentity, Examples) {
  EXPECT_EQ(dirichlet_standard_identity(3, 2), 0.0);
  for (int k = 0; k < 10; ++k) EXPECT_EQ(dirichlet_standard_identity(std::uint64_t{1} << k, 11), 0.0);
  for (std::uint64_t n = 1; n < 1024; ++n) ASSERT_LE(dirichlet_standard_identity(n, 11), 1e-9);
  EXPECT_THROW(dirichlet_standard_identity(4, 2), ResolutionError);
}

TEST(PartialSumSplit, Examples) {
  const int M = 9;
  const StepFunction f(M, oracle::random_values(M, 31));
  for (int k = 0; k < 8; ++k) {
    const std::uint64_t n = std::uint64_t{1} << k;
    const PartialSumParts p = decompose_partial_sum(f, n);
    EXPECT_EQ(p.block_sum, StepFunction::zero(M));
    EXPECT_LE(sup_distance(partial_sum(f, n), cond_expect(f, k + 1) - p.modulated), 1e-12);
  }
  const PartialSumParts w = decompose_partial_sum(walsh_function(6, 4), 5);
  EXPECT_LE((w.coarse - w.modulated + w.block_sum).sup_norm(), 1e-12);
}

TEST(PartialSumSplit, ExhaustiveRandom) {
  const int M = 9;
  const StepFunction f(M, oracle::random_values(M, 32));
  for (std::uint64_t n = 1; n < 256; ++n) {
    const PartialSumParts p = decompose_partial_sum(f, n);
    ASSERT_LE(sup_distance(partial_sum(f, n), p.coarse - p.modulated + p.block_sum), 1e-9) << "n=" << n;
  }
}

TEST(BlockConvolve, EqualsConvolutionWithKernel) {
  const int M = 8;
  const StepFunction f(M, oracle::random_values(M, 33));
  for (std::uint64_t n : {5u, 9u, 37u, 100u}) {
    const int top = bit_profile(n).top;
    for (int i = 0; i < top; ++i) {
      ASSERT_LE(sup_distance(block_convolve(f, n, i), dyadic_convolve(f, d_kernel(n, i, M))), 1e-12);
    }
  }
}

TEST(SpectrumSupport, Examples) {
  EXPECT_EQ(spectrum_support(walsh_function(7, 4)), (std::vector<std::uint64_t>{7}));
  EXPECT_TRUE(spectrum_support(StepFunction::zero(4)).empty());
  EXPECT_THROW(spectrum_support(StepFunction::zero(2), 0.0), ArgumentError);
}

TEST(SpectrumStability, CoarseTimesBlockStaysInBlock) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int M = 10;
  int checked = 0;
  for (std::uint64_t n = 3; n < 1024 && checked < 200; n += 7) {
    for (const Block& b : blocks(n)) {
      std::vector<double> phi(1u << M);
      const std::size_t run = std::size_t{1} << (M - b.i);
      for (std::size_t s = 0; s < phi.size(); s += run) std::fill_n(phi.begin() + s, run, u(rng));
      std::vector<double> c(1u << M, 0.0);
      for (std::uint64_t k = b.lo; k < b.hi_exclusive; ++k) c[k] = u(rng);
      const StepFunction h = synthesize(Spectrum(M, c));
      const StepFunction prod = StepFunction(M, phi) * h;
      for (std::uint64_t k : spectrum_support(prod)) {
        ASSERT_GE(k, b.lo);
        ASSERT_LT(k, b.hi_exclusive);
      }
      ++checked;
    }
  }
  EXPECT_GE(checked, 200);
}
