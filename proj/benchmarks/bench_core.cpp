#include <benchmark/benchmark.h>

#include "klin/distribution.hpp"
#include "klin/function_spec.hpp"
#include "klin/parity.hpp"

using namespace klin;

static void BM_BitVectorXor(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  BitVector a(n), b(n);
  a.randomize(rng);
  b.randomize(rng);
  for (auto _ : state) {
    a ^= b;
    benchmark::DoNotOptimize(a.words());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BitVectorXor)->Arg(64)->Arg(256)->Arg(4096);

static void BM_ParityEval(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  std::vector<int> idx;
  for (int i = 1; i <= n; i += 3) idx.push_back(i);
  const ParitySupport s(n, idx);
  BitVector x(n);
  x.randomize(rng);
  for (auto _ : state) benchmark::DoNotOptimize(s.eval(x));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ParityEval)->Arg(64)->Arg(256)->Arg(4096);

static void BM_OracleEval(benchmark::State& state) {
  const int n = 256;
  Rng rng(3);
  FunctionOracle f = make_parity_oracle(ParitySupport(n, {1, 50, 200}));
  BitVector x(n);
  x.randomize(rng);
  for (auto _ : state) benchmark::DoNotOptimize(f.eval(x));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_OracleEval);

static void BM_UniformSample(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto d = DistributionSpec::uniform(n);
  Rng rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(d.sample(rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_UniformSample)->Arg(64)->Arg(1024);

static void BM_MixtureSample(benchmark::State& state) {
  Rng setup(5);
  std::vector<std::pair<BitVector, double>> pts;
  for (int i = 0; i < 64; ++i) {
    BitVector p(32);
    p.randomize(setup);
    pts.emplace_back(p, 1.0 / 64.0);
  }
  const auto d = DistributionSpec::mixture(32, std::move(pts));
  Rng rng(6);
  for (auto _ : state) benchmark::DoNotOptimize(d.sample(rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_MixtureSample);

BENCHMARK_MAIN();
