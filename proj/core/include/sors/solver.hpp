#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sors/model.hpp"

namespace sors {

enum class Backend { Exhaustive, BranchAndBound };

struct SolverConfig {
  Backend backend = Backend::BranchAndBound;
  std::optional<std::uint64_t> node_limit;
  std::optional<std::chrono::duration<double>> time_limit;
  unsigned threads = 1;
  /// Record every incumbent objective in SolverStats::incumbent_trace.
  bool trace_incumbents = false;
};

enum class SolveStatus { Optimal, Infeasible, LimitReached };

std::string_view to_string(SolveStatus status);

struct SolverStats {
  std::string backend;
  std::uint64_t nodes = 0;
  /// Diagnostic only; deliberately kept out of serialized reports so that
  /// identical inputs produce byte-identical reports.
  double wall_seconds = 0.0;
  /// Proven upper bound on the optimum. Equals the objective for Optimal.
  double best_bound = 0.0;
  std::vector<double> incumbent_trace;
};

/// Result of a solve: the selection and its evaluation, the solve status,
/// and search statistics.
struct Solution {
  SolveStatus status = SolveStatus::Infeasible;
  Selection x;
  double objective = 0.0;
  std::vector<double> per_type_totals;
  PenaltyMatrix penalty;
  bool feasible = false;
  std::vector<ConstraintViolation> violations;
  SolverStats stats;
};

/// Solves the model to proven optimality (or reports infeasibility, or the
/// best known solution with a bound gap when a node/time limit fires).
///
/// Deterministic for fixed inputs regardless of cfg.threads: ties are broken
/// toward the lexicographically smallest selection vector, and the parallel
/// search decomposes into a fixed task set whose results are reduced in a
/// fixed order.
Solution solve(const SorsModel& model, const SolverConfig& cfg = {});
Solution solve(const SorsModel& model, const std::vector<InfluenceMatrix>& influences,
               const SolverConfig& cfg = {});

namespace detail {

enum class Fix : std::uint8_t { Free, Zero, One };

/// Admissible objective bound of a partial assignment: the value of fixed-One
/// items plus a greedy fractional knapsack over the free items under the
/// residual budget, all on unpenalized economic values. Returns -infinity if
/// the fixed-One items already exceed the budget.
double upper_bound(const SorsModel& model, std::span<const Fix> fixed,
                   std::span<const Index> ratio_order);

/// Branch order: indices by descending economic value / cost ratio
/// (zero-cost items first), index ascending among equals.
std::vector<Index> ratio_order(const SorsModel& model);

}  // namespace detail

}  // namespace sors
