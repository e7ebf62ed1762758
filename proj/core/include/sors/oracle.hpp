#pragma once

#include "sors/model.hpp"
#include "sors/solver.hpp"

namespace sors {

inline constexpr Index kEnumerationCap = 8;
inline constexpr Index kExhaustiveCap = 15;

/// Reference implementation of aggregate_strengths by level-cut reachability:
/// for every candidate strength t, a crisp BFS over the sign-parity-doubled
/// subgraph of edges with strength >= t decides which signed dependencies of
/// at least that strength exist. Independent of the Floyd-Warshall route and
/// exact, since every returned value is a copy of an input strength.
///
/// Throws InstanceTooLargeError when the graph has more than `cap` nodes.
StrengthMatrix enumerate_path_strengths(const ValueDependencyGraph& g,
                                        Index cap = kEnumerationCap);

/// Reference optimum by sweeping all 2^n selection vectors in lexicographic
/// order (x_1 is the most significant position); the first vector attaining
/// the best objective wins, so ties resolve to the lexicographically
/// smallest selection. Returns an Infeasible solution when no vector
/// satisfies the constraints.
///
/// Throws InstanceTooLargeError when the model has more than `cap`
/// requirements.
Solution exhaustive_solve(const SorsModel& model, Index cap = kExhaustiveCap);
Solution exhaustive_solve(const SorsModel& model,
                          const std::vector<InfluenceMatrix>& influences,
                          Index cap = kExhaustiveCap);

}  // namespace sors
