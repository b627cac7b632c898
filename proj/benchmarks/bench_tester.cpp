#include <benchmark/benchmark.h>

#include "klin/function_spec.hpp"
#include "klin/harness.hpp"
#include "klin/tester.hpp"

using namespace klin;

// One full tester run: plan construction, answers, and stage evaluation.
static void BM_FullRun(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int n = 256;
  const TesterConfig cfg = TesterConfig::make(n, k, 0.25, Mode::Exact, 7);
  const KLinearTester tester(cfg);
  const auto d = DistributionSpec::uniform(n);
  Rng rng(9);
  FunctionOracle f = make_parity_oracle(gen_k_parity(n, k, rng));
  uint64_t seed = 0;
  for (auto _ : state) {
    const Verdict v = tester.run_with_seed(f, d, ++seed);
    benchmark::DoNotOptimize(v.accept);
  }
  state.counters["f_queries"] = static_cast<double>(planned_f_queries(cfg));
}
BENCHMARK(BM_FullRun)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_PlanOnly(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int n = 256;
  const TesterConfig cfg = TesterConfig::make(n, k, 0.25, Mode::Exact, 7);
  const KLinearTester tester(cfg);
  const auto d = DistributionSpec::uniform(n);
  uint64_t seed = 0;
  for (auto _ : state) {
    const QueryPlan p = tester.plan(d, ++seed);
    benchmark::DoNotOptimize(p.size());
  }
}
BENCHMARK(BM_PlanOnly)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
