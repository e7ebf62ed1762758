#include <benchmark/benchmark.h>

#include <random>

#include "sors/vdg.hpp"

namespace {

sors::ValueDependencyGraph dense_graph(sors::Index n, double density, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution flip(density);
  std::uniform_real_distribution<double> strength(0.0, 1.0);
  std::uniform_int_distribution<int> quality(0, 2);
  sors::ValueDependencyGraph g(n);
  for (sors::Index i = 0; i < n; ++i) {
    for (sors::Index j = 0; j < n; ++j) {
      if (i != j && flip(rng)) {
        g.add_edge(i, j, static_cast<sors::Quality>(quality(rng)), strength(rng));
      }
    }
  }
  return g;
}

void BM_AggregateStrengths(benchmark::State& state) {
  const auto n = static_cast<sors::Index>(state.range(0));
  const sors::ValueDependencyGraph g = dense_graph(n, 0.5, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sors::aggregate_strengths(g));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AggregateStrengths)->Arg(50)->Arg(100)->Arg(200)->Arg(400)->Complexity();

void BM_InfluenceMatrix(benchmark::State& state) {
  const auto n = static_cast<sors::Index>(state.range(0));
  const sors::StrengthMatrix pairs = sors::aggregate_strengths(dense_graph(n, 0.5, 7));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sors::influence(pairs));
  }
}
BENCHMARK(BM_InfluenceMatrix)->Arg(100)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
