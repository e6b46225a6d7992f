#include <benchmark/benchmark.h>

#include "walshmeans/corpus.hpp"
#include "walshmeans/kernel_decomposition.hpp"
#include "walshmeans/walsh.hpp"

using namespace walshmeans;

static void BM_Analyze(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const StepFunction f = builtin_function("random_step:seed=1", M);
  for (auto _ : state) benchmark::DoNotOptimize(analyze(f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_Analyze)->DenseRange(10, 20, 5);

static void BM_Synthesize(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const Spectrum s = analyze(builtin_function("random_step:seed=1", M));
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(s));
}
BENCHMARK(BM_Synthesize)->DenseRange(10, 20, 5);

static void BM_DyadicMaximal(benchmark::State& state) {
  const StepFunction f = builtin_function("random_step:seed=1", static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dyadic_maximal(f));
}
BENCHMARK(BM_DyadicMaximal)->Arg(16);

static void BM_DecomposeDirichlet(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  std::uint64_t n = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose_dirichlet(n, M));
    n = n % ((std::uint64_t{1} << (M - 1)) - 1) + 1;
  }
}
BENCHMARK(BM_DecomposeDirichlet)->Arg(10)->Arg(13);

static void BM_CharacterProjection(benchmark::State& state) {
  const StepFunction f = builtin_function("random_step:seed=1", 16);
  for (auto _ : state) benchmark::DoNotOptimize(character_projection(f, 0x1234, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CharacterProjection)->Arg(2)->Arg(8)->Arg(14);
