#include "sors/vdg.hpp"

#include <algorithm>
#include <string>

namespace sors {

Quality serial_quality(Quality a, Quality b) {
  if (a == Quality::Unknown || b == Quality::Unknown) return Quality::Unknown;
  return a == b ? Quality::Positive : Quality::Negative;
}

std::string_view quality_symbol(Quality q) {
  switch (q) {
    case Quality::Positive: return "+";
    case Quality::Negative: return "-";
    default: return "±";
  }
}

void ValueDependencyGraph::add_edge(const ExplicitDependency& edge) {
  if (edge.source >= node_count_ || edge.target >= node_count_) {
    throw ValidationError("dependency endpoint out of range: (" +
                          std::to_string(edge.source) + ", " +
                          std::to_string(edge.target) + ") with " +
                          std::to_string(node_count_) + " requirements");
  }
  if (edge.source == edge.target) {
    throw ValidationError("self-dependency on requirement " +
                          std::to_string(edge.source) + " is not allowed");
  }
  if (!(edge.strength >= 0.0 && edge.strength <= 1.0)) {
    throw ValidationError("dependency strength " + std::to_string(edge.strength) +
                          " outside [0, 1] for pair (" + std::to_string(edge.source) +
                          ", " + std::to_string(edge.target) + ")");
  }
  auto [it, inserted] = edges_.emplace(std::make_pair(edge.source, edge.target), edge);
  if (!inserted) {
    throw ValidationError("duplicate explicit dependency for pair (" +
                          std::to_string(edge.source) + ", " +
                          std::to_string(edge.target) + ")");
  }
}

const ExplicitDependency* ValueDependencyGraph::edge(Index source, Index target) const {
  auto it = edges_.find({source, target});
  return it == edges_.end() ? nullptr : &it->second;
}

namespace {

const ExplicitDependency& edge_or_throw(const ValueDependencyGraph& g, Index from, Index to) {
  const ExplicitDependency* e = g.edge(from, to);
  if (e == nullptr) {
    throw MissingEdgeError("no explicit dependency from " + std::to_string(from) +
                           " to " + std::to_string(to));
  }
  return *e;
}

void require_path(std::span<const Index> path) {
  if (path.size() < 2) {
    throw ValidationError("a dependency path needs at least two requirements");
  }
}

}  // namespace

double path_strength(const ValueDependencyGraph& g, std::span<const Index> path) {
  require_path(path);
  double strength = 1.0;
  for (Index t = 1; t < path.size(); ++t) {
    strength = std::min(strength, edge_or_throw(g, path[t - 1], path[t]).strength);
  }
  return strength;
}

Quality path_quality(const ValueDependencyGraph& g, std::span<const Index> path) {
  require_path(path);
  Quality q = edge_or_throw(g, path[0], path[1]).quality;
  for (Index t = 2; t < path.size(); ++t) {
    q = serial_quality(q, edge_or_throw(g, path[t - 1], path[t]).quality);
  }
  return q;
}

StrengthMatrix aggregate_strengths(const ValueDependencyGraph& g) {
  const Index n = g.node_count();
  StrengthMatrix out(n);
  if (n == 0) return out;

  // State 2v is "at requirement v with an even number of negative edges so
  // far", state 2v+1 the odd counterpart. A positive edge preserves parity, a
  // negative edge flips it; widest path between parity states then yields the
  // per-sign walk suprema in one standard Floyd-Warshall pass.
  const Index m = 2 * n;
  std::vector<double> dist(m * m, 0.0);
  for (const auto& [pair, e] : g.edges()) {
    if (e.quality == Quality::Unknown) continue;
    const Index u = 2 * e.source;
    const Index v = 2 * e.target;
    if (e.quality == Quality::Positive) {
      dist[u * m + v] = e.strength;
      dist[(u + 1) * m + v + 1] = e.strength;
    } else {
      dist[u * m + v + 1] = e.strength;
      dist[(u + 1) * m + v] = e.strength;
    }
  }

  for (Index k = 0; k < m; ++k) {
    const double* row_k = dist.data() + k * m;
    for (Index i = 0; i < m; ++i) {
      const double leg = dist[i * m + k];
      if (leg <= 0.0) continue;  // no walk into this state; min() cannot gain
      double* row_i = dist.data() + i * m;
      for (Index j = 0; j < m; ++j) {
        const double via = std::min(leg, row_k[j]);
        if (via > row_i[j]) row_i[j] = via;
      }
    }
  }

  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;  // diagonal stays (0, 0)
      out.at(i, j) = StrengthPair{dist[2 * i * m + 2 * j], dist[2 * i * m + 2 * j + 1]};
    }
  }
  return out;
}

InfluenceMatrix influence(const StrengthMatrix& pairs) {
  const Index n = pairs.size();
  InfluenceMatrix out(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const StrengthPair& p = pairs.at(i, j);
      out.at(i, j) = p.positive - p.negative;
    }
  }
  return out;
}

}  // namespace sors
