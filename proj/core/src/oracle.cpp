#include "sors/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <string>

namespace sors {

StrengthMatrix enumerate_path_strengths(const ValueDependencyGraph& g, Index cap) {
  const Index n = g.node_count();
  if (n > cap) {
    throw InstanceTooLargeError("graph has " + std::to_string(n) +
                                " nodes, enumeration cap is " + std::to_string(cap));
  }
  StrengthMatrix out(n);

  std::set<double> levels;
  for (const auto& [pair, e] : g.edges()) {
    if (e.quality != Quality::Unknown && e.strength > 0.0) levels.insert(e.strength);
  }

  // Adjacency restricted to one level cut: edges at least as strong as t.
  std::vector<std::vector<std::pair<Index, bool>>> adj(n);  // (target, flips sign)
  for (double level : levels) {
    for (auto& row : adj) row.clear();
    for (const auto& [pair, e] : g.edges()) {
      if (e.quality == Quality::Unknown || e.strength < level) continue;
      adj[e.source].emplace_back(e.target, e.quality == Quality::Negative);
    }
    std::vector<char> seen(2 * n);
    std::vector<Index> stack;
    for (Index src = 0; src < n; ++src) {
      std::fill(seen.begin(), seen.end(), 0);
      stack.clear();
      // Seed with the walks of length one; the empty walk does not count.
      for (const auto& [to, flips] : adj[src]) {
        const Index state = 2 * to + (flips ? 1 : 0);
        if (!seen[state]) {
          seen[state] = 1;
          stack.push_back(state);
        }
      }
      while (!stack.empty()) {
        const Index state = stack.back();
        stack.pop_back();
        const Index at = state / 2;
        const Index parity = state % 2;
        for (const auto& [to, flips] : adj[at]) {
          const Index next = 2 * to + (flips ? 1 - parity : parity);
          if (!seen[next]) {
            seen[next] = 1;
            stack.push_back(next);
          }
        }
      }
      for (Index to = 0; to < n; ++to) {
        if (to == src) continue;
        if (seen[2 * to]) out.at(src, to).positive = level;
        if (seen[2 * to + 1]) out.at(src, to).negative = level;
      }
    }
  }
  return out;
}

Solution exhaustive_solve(const SorsModel& model, Index cap) {
  return exhaustive_solve(model, compute_influences(model), cap);
}

Solution exhaustive_solve(const SorsModel& model,
                          const std::vector<InfluenceMatrix>& influences, Index cap) {
  const Index n = model.size();
  if (n > cap) {
    throw InstanceTooLargeError("model has " + std::to_string(n) +
                                " requirements, exhaustive cap is " + std::to_string(cap));
  }
  const auto started = std::chrono::steady_clock::now();

  Selection x(n, 0);
  bool found = false;
  Evaluation best;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t m = 0; m < count; ++m) {
    for (Index i = 0; i < n; ++i) {
      x[i] = static_cast<std::uint8_t>((m >> (n - 1 - i)) & 1u);
    }
    Evaluation ev = evaluate(model, influences, x);
    if (!ev.feasible) continue;
    if (!found || ev.objective > best.objective) {
      best = std::move(ev);
      found = true;
    }
  }

  Solution sol;
  if (found) {
    sol.status = SolveStatus::Optimal;
  } else {
    sol.status = SolveStatus::Infeasible;
    best = evaluate(model, influences, Selection(n, 0));
  }
  sol.x = best.x;
  sol.objective = best.objective;
  sol.per_type_totals = best.per_type_totals;
  sol.penalty = best.penalty;
  sol.feasible = best.feasible;
  sol.violations = best.violations;
  sol.stats.backend = "exhaustive";
  sol.stats.nodes = count;
  sol.stats.best_bound = found ? best.objective : 0.0;
  sol.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return sol;
}

}  // namespace sors
