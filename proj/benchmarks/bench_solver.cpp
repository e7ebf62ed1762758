#include <benchmark/benchmark.h>

#include <random>

#include "sors/oracle.hpp"
#include "sors/solver.hpp"

namespace {

sors::SorsModel random_instance(sors::Index n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(0.0, 10.0);
  std::uniform_real_distribution<double> cost(0.5, 10.0);
  std::uniform_real_distribution<double> strength(0.0, 1.0);
  std::uniform_int_distribution<int> quality(0, 2);
  std::bernoulli_distribution edge(0.25);

  sors::SorsModel m;
  m.value_types = {{1, "economic"}, {2, "social2"}};
  double total_cost = 0.0;
  for (sors::Index i = 0; i < n; ++i) {
    const double c = cost(rng);
    total_cost += c;
    m.requirements.push_back({"r" + std::to_string(i), c, {value(rng), value(rng)}});
  }
  m.budget = 0.5 * total_cost;
  for (int k = 0; k < 2; ++k) {
    sors::ValueDependencyGraph g(n);
    for (sors::Index i = 0; i < n; ++i) {
      for (sors::Index j = 0; j < n; ++j) {
        if (i != j && edge(rng)) {
          g.add_edge(i, j, static_cast<sors::Quality>(quality(rng)), strength(rng));
        }
      }
    }
    m.vdgs.push_back(std::move(g));
  }
  m.social_bounds = {0.0};
  return m;
}

void BM_BranchAndBound(benchmark::State& state) {
  const auto n = static_cast<sors::Index>(state.range(0));
  const sors::SorsModel model = random_instance(n, 1234);
  const auto influences = sors::compute_influences(model);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sors::solve(model, influences, {}));
  }
}
BENCHMARK(BM_BranchAndBound)->Arg(12)->Arg(16)->Arg(20);

void BM_BranchAndBoundThreads(benchmark::State& state) {
  const sors::SorsModel model = random_instance(18, 99);
  const auto influences = sors::compute_influences(model);
  sors::SolverConfig cfg;
  cfg.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sors::solve(model, influences, cfg));
  }
}
BENCHMARK(BM_BranchAndBoundThreads)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_Exhaustive(benchmark::State& state) {
  const auto n = static_cast<sors::Index>(state.range(0));
  const sors::SorsModel model = random_instance(n, 77);
  const auto influences = sors::compute_influences(model);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sors::exhaustive_solve(model, influences));
  }
}
BENCHMARK(BM_Exhaustive)->Arg(10)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
