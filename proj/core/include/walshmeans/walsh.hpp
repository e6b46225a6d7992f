#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "walshmeans/step_function.hpp"

namespace walshmeans {

/// Index of the rank-M cell containing x (+) y for x in cell j, y in cell k.
/// Rank-M cell indices encode the first M binary digits, so this is j XOR k.
std::uint64_t dyadic_add(std::uint64_t j, std::uint64_t k, int resolution);

/// |n| (highest set bit) and m(n) (lowest set bit) of a positive integer.
struct BitProfile {
  std::uint64_t n;
  int top;
  int bottom;
};

BitProfile bit_profile(std::uint64_t n);

/// Upper truncation n^(j): n with every bit below position j cleared.
std::uint64_t truncate(std::uint64_t n, int j);

/// Reverses the low `bits` bits of x.
std::uint64_t bit_reverse(std::uint64_t x, int bits) noexcept;

/// w_n on rank-M cell j, as +1 or -1. Requires n < 2^M.
int walsh_eval(std::uint64_t n, std::uint64_t j, int resolution);

StepFunction walsh_function(std::uint64_t n, int resolution);

/// In-place unnormalized Walsh-Hadamard butterfly (natural/Hadamard order).
/// The length must be a power of two.
void fwht_inplace(std::span<double> xs);

/// Walsh-Paley coefficients f^(k) = integral of f w_k; O(M 2^M).
Spectrum analyze(const StepFunction& f);

/// Inverse of analyze.
StepFunction synthesize(const Spectrum& s);

/// D_n = sum_{k<n} w_k. D_0 = 0. Requires n <= 2^M.
StepFunction dirichlet_kernel(std::uint64_t n, int resolution);

/// K_n = (1/n) sum_{k=1}^n D_k. Requires 1 <= n <= 2^M.
StepFunction fejer_kernel(std::uint64_t n, int resolution);

/// S_n f: spectral truncation to frequencies < n. S_0 f = 0.
StepFunction partial_sum(const StepFunction& f, std::uint64_t n);

/// E_m f: average over rank-m cells. Requires m <= M.
StepFunction cond_expect(const StepFunction& f, int m);

/// (f*g)(y) = integral of f(x (+) y) g(x) dx, computed through spectra.
StepFunction dyadic_convolve(const StepFunction& f, const StepFunction& g);

/// w_c E_i(f w_c): the part of f with spectrum in {c XOR r : r < 2^i}.
/// Equals f * (w_c D_{2^i}) and costs O(2^M). Requires c < 2^M, i <= M.
StepFunction character_projection(const StepFunction& f, std::uint64_t c, int i);

/// E_m|f| for every rank m = 0..M; entry m holds the 2^m cell averages.
std::vector<std::vector<double>> abs_average_pyramid(const StepFunction& f);

/// f* = max_{0<=m<=M} E_m|f| cellwise.
StepFunction dyadic_maximal(const StepFunction& f);

}  // namespace walshmeans
