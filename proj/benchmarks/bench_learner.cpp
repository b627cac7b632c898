#include <benchmark/benchmark.h>

#include "klin/harness.hpp"
#include "klin/learner.hpp"

using namespace klin;

static void BM_BuildMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  for (auto _ : state) {
    const QueryMatrix m = build_bch_matrix(n, k);
    benchmark::DoNotOptimize(m.q());
  }
}
BENCHMARK(BM_BuildMatrix)->Args({255, 8})->Args({4095, 32})->Args({32767, 64});

static void BM_Syndrome(benchmark::State& state) {
  const QueryMatrix m = build_bch_matrix(4095, 32);
  Rng rng(1);
  const ParitySupport x = gen_k_parity(4095, 32, rng);
  for (auto _ : state) benchmark::DoNotOptimize(syndrome(m, x));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Syndrome);

static void BM_Decode(benchmark::State& state) {
  const int weight = static_cast<int>(state.range(0));
  const QueryMatrix m = build_bch_matrix(4095, 32);
  Rng rng(2);
  const ParitySupport x = gen_k_parity(4095, weight, rng);
  const BitVector answers = syndrome(m, x);
  for (auto _ : state) {
    const DecodeResult r = decode(m, answers, 32);
    benchmark::DoNotOptimize(r.not_sparse());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Decode)->Arg(1)->Arg(8)->Arg(32);

BENCHMARK_MAIN();
