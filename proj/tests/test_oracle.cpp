#include <doctest.h>

#include <random>

#include "sors/oracle.hpp"
#include "support/generators.hpp"

using namespace sors;

namespace {

SorsModel single_requirement(double cost, double value, double budget) {
  SorsModel m;
  m.value_types = {{1, "economic"}};
  m.requirements = {{"r1", cost, {value}}};
  m.vdgs = {ValueDependencyGraph(1)};
  m.budget = budget;
  return m;
}

}  // namespace

TEST_CASE("enumerate_path_strengths on trivial graphs") {
  CHECK(enumerate_path_strengths(ValueDependencyGraph(3)) ==
        aggregate_strengths(ValueDependencyGraph(3)));

  ValueDependencyGraph g(3);
  g.add_edge(0, 1, Quality::Positive, 0.7);
  const StrengthMatrix m = enumerate_path_strengths(g);
  CHECK(m.at(0, 1) == StrengthPair{0.7, 0.0});
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 3; ++j) {
      if (i == 0 && j == 1) continue;
      CHECK(m.at(i, j) == StrengthPair{0.0, 0.0});
    }
  }
}

TEST_CASE("enumerate_path_strengths separates signs on the 3-node example") {
  ValueDependencyGraph g(3);
  g.add_edge(0, 1, Quality::Positive, 0.6);
  g.add_edge(1, 2, Quality::Negative, 0.5);
  g.add_edge(0, 2, Quality::Positive, 0.2);
  CHECK(enumerate_path_strengths(g).at(0, 2) == StrengthPair{0.2, 0.5});
}

TEST_CASE("enumerate_path_strengths enforces its size cap") {
  CHECK_THROWS_AS(enumerate_path_strengths(ValueDependencyGraph(9)), InstanceTooLargeError);
  CHECK_NOTHROW(enumerate_path_strengths(ValueDependencyGraph(9), 9));
}

TEST_CASE("exhaustive_solve picks the only worthwhile singleton") {
  const Solution sol = exhaustive_solve(single_requirement(5.0, 10.0, 10.0));
  CHECK(sol.status == SolveStatus::Optimal);
  CHECK(sol.x == Selection{1});
  CHECK(sol.objective == 10.0);
  CHECK(sol.feasible);
}

TEST_CASE("exhaustive_solve drops an item the budget excludes") {
  const Solution sol = exhaustive_solve(single_requirement(5.0, 10.0, 2.0));
  CHECK(sol.status == SolveStatus::Optimal);
  CHECK(sol.x == Selection{0});
  CHECK(sol.objective == 0.0);
}

TEST_CASE("exhaustive_solve breaks ties toward the smallest selection vector") {
  SorsModel m;
  m.value_types = {{1, "economic"}};
  m.requirements = {{"a", 5.0, {5.0}}, {"b", 5.0, {5.0}}};
  m.vdgs = {ValueDependencyGraph(2)};
  m.budget = 5.0;
  const Solution sol = exhaustive_solve(m);
  CHECK(sol.objective == 5.0);
  CHECK(sol.x == Selection{0, 1});  // (0,1) precedes (1,0) lexicographically
}

TEST_CASE("exhaustive_solve reports unreachable social bounds as infeasible") {
  SorsModel m;
  m.value_types = {{1, "economic"}, {2, "social2"}};
  m.requirements = {{"r1", 1.0, {4.0, 1.0}}, {"r2", 1.0, {3.0, 2.0}}};
  m.vdgs = {ValueDependencyGraph(2), ValueDependencyGraph(2)};
  m.budget = 10.0;
  m.social_bounds = {4.0};  // total social value is 3 even with both selected
  const Solution sol = exhaustive_solve(m);
  CHECK(sol.status == SolveStatus::Infeasible);
  CHECK_FALSE(sol.feasible);
  CHECK_FALSE(sol.violations.empty());
}

TEST_CASE("exhaustive_solve enforces its size cap") {
  SorsModel m;
  m.value_types = {{1, "economic"}};
  m.vdgs = {ValueDependencyGraph(16)};
  for (int i = 0; i < 16; ++i) {
    m.requirements.push_back({"r" + std::to_string(i), 1.0, {1.0}});
  }
  m.budget = 4.0;
  CHECK_THROWS_AS(exhaustive_solve(m), InstanceTooLargeError);
  CHECK_NOTHROW(exhaustive_solve(m, 16));
}

TEST_CASE("exhaustive winner dominates every feasible selection") {
  sorstest::Rng rng(321);
  for (int trial = 0; trial < 20; ++trial) {
    sorstest::ModelParams params;
    params.n = std::uniform_int_distribution<Index>(1, 8)(rng);
    params.types = std::uniform_int_distribution<Index>(1, 3)(rng);
    const SorsModel model = sorstest::random_model(rng, params);
    const auto influences = compute_influences(model);
    const Solution sol = exhaustive_solve(model, influences);

    Selection x(model.size(), 0);
    bool any_feasible = false;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << model.size()); ++mask) {
      for (Index i = 0; i < model.size(); ++i) {
        x[i] = static_cast<std::uint8_t>((mask >> (model.size() - 1 - i)) & 1u);
      }
      const Evaluation ev = evaluate(model, influences, x);
      if (!ev.feasible) continue;
      any_feasible = true;
      CHECK(sol.objective >= ev.objective);
    }
    CHECK(any_feasible == (sol.status == SolveStatus::Optimal));
    if (sol.status == SolveStatus::Optimal) {
      CHECK(evaluate(model, influences, sol.x).feasible);
    }
  }
}
