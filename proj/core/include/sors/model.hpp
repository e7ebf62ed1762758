#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sors/vdg.hpp"

namespace sors {

/// A value type of the model. Key 1 is the economic value; keys >= 2 are
/// social values with lower bounds.
struct ValueType {
  int key = 1;
  std::string name;
};

struct Requirement {
  std::string id;
  double cost = 0.0;
  /// Per-type values, aligned with SorsModel::value_types. values[0] is the
  /// economic value.
  std::vector<double> values;
};

enum class StructuralKind { Precedes, ConflictsWith };

/// Structural coupling between two requirements.
///
/// Precedes encodes x_i <= x_j: requirement j must be in the selection for i
/// to be selectable. ConflictsWith encodes x_i + x_j <= 1.
struct PrecedenceConstraint {
  StructuralKind kind = StructuralKind::Precedes;
  Index i = 0;
  Index j = 0;
};

/// The full selection model: requirements, one dependency graph per value
/// type, a budget, social lower bounds, and structural couplings.
struct SorsModel {
  std::vector<ValueType> value_types;            // ascending unique keys; [0] is economic
  std::vector<Requirement> requirements;
  std::vector<ValueDependencyGraph> vdgs;        // one per value type
  double budget = 0.0;
  std::vector<double> social_bounds;             // aligned with value_types[1..]
  std::vector<PrecedenceConstraint> structural;

  Index size() const { return requirements.size(); }
  Index type_count() const { return value_types.size(); }
};

/// Checks the model's structural invariants (dimension agreement, value and
/// cost signs, index ranges); throws ValidationError or
/// DimensionMismatchError with a description of the first breach.
void validate_model(const SorsModel& model);

/// Influence matrices for all value types, in value-type order.
std::vector<InfluenceMatrix> compute_influences(const SorsModel& model);

/// A candidate selection: one 0/1 entry per requirement.
using Selection = std::vector<std::uint8_t>;

/// Penalties theta[i][k] in [0, 1] for a fixed selection.
class PenaltyMatrix {
 public:
  PenaltyMatrix() = default;
  PenaltyMatrix(Index n, Index types) : n_(n), types_(types), cells_(n * types, 0.0) {}

  Index size() const { return n_; }
  Index type_count() const { return types_; }

  double& at(Index i, Index k) { return cells_[i * types_ + k]; }
  double at(Index i, Index k) const { return cells_[i * types_ + k]; }

 private:
  Index n_ = 0;
  Index types_ = 0;
  std::vector<double> cells_;
};

/// One violated constraint of a candidate selection.
struct ConstraintViolation {
  enum class Kind { Budget, Social, Precedes, Conflicts };

  Kind kind = Kind::Budget;
  int type_key = 0;  // Social only
  Index i = 0;       // structural kinds
  Index j = 0;

  /// Human-readable description with requirement ids resolved.
  std::string describe(const SorsModel& model) const;
};

/// Penalty of each requirement's type-k value under selection x: the largest
/// influence among ignored positive influencers and selected negative
/// influencers of that requirement (fuzzy OR), zero when there is none.
/// Throws DimensionMismatchError when x or the influence matrices do not
/// match the model.
PenaltyMatrix penalties(const SorsModel& model,
                        const std::vector<InfluenceMatrix>& influences,
                        const Selection& x);

/// Everything evaluate() derives from a candidate selection.
struct Evaluation {
  Selection x;
  double objective = 0.0;                 // == per_type_totals[0]
  std::vector<double> per_type_totals;    // sum of x_i (1 - theta_{i,k}) v_{i,k}
  PenaltyMatrix penalty;
  bool feasible = false;
  std::vector<ConstraintViolation> violations;
};

/// Penalized totals, objective, and feasibility of a candidate selection.
/// Pure function of its inputs.
Evaluation evaluate(const SorsModel& model,
                    const std::vector<InfluenceMatrix>& influences,
                    const Selection& x);

/// The violated constraints of x; empty result means feasible. Order is
/// deterministic: budget, social bounds by type, structural in model order.
std::vector<ConstraintViolation> evaluate_feasibility(
    const SorsModel& model, const std::vector<InfluenceMatrix>& influences,
    const Selection& x);

}  // namespace sors
