#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "sors/errors.hpp"

namespace sors {

using Index = std::size_t;

/// Sign of a value dependency. Unknown is the "±" sign: a dependency whose
/// direction of influence cannot be committed to either way.
enum class Quality { Positive, Negative, Unknown };

/// Serial inference for chained dependencies: the sign of a two-edge chain.
///
///   + after +  ->  +        - after -  ->  +
///   + after -  ->  -        anything with ± -> ±
Quality serial_quality(Quality a, Quality b);

/// "+", "-" or the two-byte UTF-8 "±".
std::string_view quality_symbol(Quality q);

/// One explicit value dependency: the value of `source` depends on `target`
/// with the given sign and a fuzzy membership strength in [0, 1].
struct ExplicitDependency {
  Index source = 0;
  Index target = 0;
  Quality quality = Quality::Unknown;
  double strength = 0.0;
};

/// Signed directed fuzzy graph over the requirements of one value type.
///
/// Sign and strength are functions of the ordered pair, so at most one
/// explicit edge may exist per (source, target); self-edges carry no
/// information and are rejected. Absence of a dependency is simply a missing
/// edge. Edge iteration order is deterministic (ordered by pair).
class ValueDependencyGraph {
 public:
  using EdgeMap = std::map<std::pair<Index, Index>, ExplicitDependency>;

  ValueDependencyGraph() = default;
  explicit ValueDependencyGraph(Index node_count) : node_count_(node_count) {}

  Index node_count() const { return node_count_; }
  Index edge_count() const { return edges_.size(); }

  /// Throws ValidationError on out-of-range endpoints, self-edges, strengths
  /// outside [0, 1], or a second edge for an already covered pair.
  void add_edge(const ExplicitDependency& edge);
  void add_edge(Index source, Index target, Quality quality, double strength) {
    add_edge(ExplicitDependency{source, target, quality, strength});
  }

  /// nullptr when the pair has no explicit dependency.
  const ExplicitDependency* edge(Index source, Index target) const;

  const EdgeMap& edges() const { return edges_; }

 private:
  Index node_count_ = 0;
  EdgeMap edges_;
};

/// Strength of a dependency path: the weakest explicit strength along it
/// (fuzzy AND). The path is a sequence of at least two requirement indices;
/// throws MissingEdgeError when a consecutive pair has no explicit edge.
double path_strength(const ValueDependencyGraph& g, std::span<const Index> path);

/// Sign of a dependency path: left fold of serial_quality over its edges.
Quality path_quality(const ValueDependencyGraph& g, std::span<const Index> path);

/// Aggregate strengths of all positive and all negative dependencies between
/// an ordered pair; 0 marks "no such dependency".
struct StrengthPair {
  double positive = 0.0;
  double negative = 0.0;

  friend bool operator==(const StrengthPair&, const StrengthPair&) = default;
};

/// Dense n-by-n matrix of StrengthPair.
class StrengthMatrix {
 public:
  StrengthMatrix() = default;
  explicit StrengthMatrix(Index n) : n_(n), cells_(n * n) {}

  Index size() const { return n_; }

  StrengthPair& at(Index i, Index j) { return cells_[i * n_ + j]; }
  const StrengthPair& at(Index i, Index j) const { return cells_[i * n_ + j]; }

  friend bool operator==(const StrengthMatrix&, const StrengthMatrix&) = default;

 private:
  Index n_ = 0;
  std::vector<StrengthPair> cells_;
};

/// Overall influences in [-1, 1]. Row i, column j holds the influence of
/// requirement j on the value of requirement i; the diagonal is zero.
class InfluenceMatrix {
 public:
  InfluenceMatrix() = default;
  explicit InfluenceMatrix(Index n) : n_(n), cells_(n * n, 0.0) {}

  Index size() const { return n_; }

  double& at(Index i, Index j) { return cells_[i * n_ + j]; }
  double at(Index i, Index j) const { return cells_[i * n_ + j]; }

 private:
  Index n_ = 0;
  std::vector<double> cells_;
};

/// All-pairs aggregate dependency strengths.
///
/// Computes, for every ordered pair (i, j), the supremum of path_strength
/// over all positive-sign dependency walks i -> j and the analogous supremum
/// over negative-sign walks. Implemented as widest-path Floyd-Warshall over
/// the 2n sign-parity states (requirement, even/odd count of negative edges),
/// which composes strengths with min, combines alternatives with max, and
/// realises exactly the four sign relaxations (+,+)->+, (-,-)->+, (+,-)->-,
/// (-,+)->-. Unknown-sign edges are never seeded and contribute to neither
/// aggregate. Diagonal entries of the result are (0, 0).
///
/// O(n^3) time, O(n^2) space. Strengths are only ever copied through min/max,
/// so results are exact copies of input constants.
StrengthMatrix aggregate_strengths(const ValueDependencyGraph& g);

/// Overall influence per pair: positive minus negative aggregate strength.
InfluenceMatrix influence(const StrengthMatrix& pairs);

}  // namespace sors
