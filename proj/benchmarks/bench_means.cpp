#include <benchmark/benchmark.h>

#include "walshmeans/corpus.hpp"
#include "walshmeans/means_maximal.hpp"
#include "walshmeans/subsequence.hpp"

using namespace walshmeans;

namespace {

Subsequence minimal(double delta, int M) {
  SequenceParams p;
  p.delta = delta;
  return gen_sequence_until_limit(SequenceKind::minimal_growth, p, (std::size_t{1} << M) + 1);
}

}  // namespace

static void BM_SigmaSweep(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const StepFunction f = builtin_function("spike:6", M);
  const Subsequence a = minimal(0.9, M);
  const std::size_t n = a.admissible_count(std::uint64_t{1} << M);
  for (auto _ : state) {
    SigmaSweep sweep(f, a);
    for (std::size_t k = 0; k < n; ++k) benchmark::DoNotOptimize(sweep.advance());
  }
  state.counters["N"] = static_cast<double>(n);
}
BENCHMARK(BM_SigmaSweep)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_StoppedBlockSums(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const StepFunction f = builtin_function("random_step:seed=3", M);
  const Subsequence a = minimal(0.5, M);
  const std::size_t n = a.admissible_count(std::uint64_t{1} << (M - 1));
  for (auto _ : state) benchmark::DoNotOptimize(stopped_block_sums(f, a, 0.5, n));
  state.counters["N"] = static_cast<double>(n);
}
BENCHMARK(BM_StoppedBlockSums)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_StoppedMeanMax(benchmark::State& state) {
  const int M = 12;
  const StepFunction f = builtin_function("random_step:seed=3", M);
  const Subsequence a = minimal(0.9, M);
  const std::size_t n = a.admissible_count(std::uint64_t{1} << (M - 1));
  for (auto _ : state) benchmark::DoNotOptimize(stopped_mean_max(f, a, 0.5, n));
}
BENCHMARK(BM_StoppedMeanMax)->Unit(benchmark::kMillisecond);
