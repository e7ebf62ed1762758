#include "sors/model.hpp"

#include <algorithm>
#include <string>

namespace sors {

namespace {

void check_dimensions(const SorsModel& model,
                      const std::vector<InfluenceMatrix>& influences,
                      const Selection& x) {
  const Index n = model.size();
  if (x.size() != n) {
    throw DimensionMismatchError("selection has " + std::to_string(x.size()) +
                                 " entries for " + std::to_string(n) + " requirements");
  }
  if (influences.size() != model.type_count()) {
    throw DimensionMismatchError("got " + std::to_string(influences.size()) +
                                 " influence matrices for " +
                                 std::to_string(model.type_count()) + " value types");
  }
  for (const InfluenceMatrix& m : influences) {
    if (m.size() != n) {
      throw DimensionMismatchError("influence matrix size " + std::to_string(m.size()) +
                                   " does not match " + std::to_string(n) + " requirements");
    }
  }
}

}  // namespace

void validate_model(const SorsModel& model) {
  const Index n = model.size();
  const Index types = model.type_count();
  if (types == 0) throw ValidationError("model declares no value types");
  for (Index k = 0; k + 1 < types; ++k) {
    if (model.value_types[k].key >= model.value_types[k + 1].key) {
      throw ValidationError("value-type keys must be unique and ascending");
    }
  }
  if (model.value_types.front().key != 1) {
    throw ValidationError("value type with key 1 (economic) is required");
  }
  if (model.vdgs.size() != types) {
    throw DimensionMismatchError("model has " + std::to_string(model.vdgs.size()) +
                                 " dependency graphs for " + std::to_string(types) +
                                 " value types");
  }
  for (const ValueDependencyGraph& g : model.vdgs) {
    if (g.node_count() != n) {
      throw DimensionMismatchError("dependency graph covers " +
                                   std::to_string(g.node_count()) + " requirements, model has " +
                                   std::to_string(n));
    }
  }
  if (model.social_bounds.size() + 1 != types) {
    throw DimensionMismatchError("model has " + std::to_string(model.social_bounds.size()) +
                                 " social bounds for " + std::to_string(types) + " value types");
  }
  if (!(model.budget >= 0.0)) throw ValidationError("budget must be nonnegative");
  for (Index i = 0; i < n; ++i) {
    const Requirement& r = model.requirements[i];
    if (!(r.cost >= 0.0)) {
      throw ValidationError("requirement " + r.id + " has negative cost");
    }
    if (r.values.size() != types) {
      throw DimensionMismatchError("requirement " + r.id + " carries " +
                                   std::to_string(r.values.size()) + " values for " +
                                   std::to_string(types) + " value types");
    }
    for (double v : r.values) {
      if (!(v >= 0.0)) throw ValidationError("requirement " + r.id + " has a negative value");
    }
  }
  for (const PrecedenceConstraint& c : model.structural) {
    if (c.i >= n || c.j >= n) throw ValidationError("structural constraint index out of range");
    if (c.i == c.j) throw ValidationError("structural constraint relates a requirement to itself");
  }
}

std::vector<InfluenceMatrix> compute_influences(const SorsModel& model) {
  std::vector<InfluenceMatrix> out;
  out.reserve(model.vdgs.size());
  for (const ValueDependencyGraph& g : model.vdgs) {
    out.push_back(influence(aggregate_strengths(g)));
  }
  return out;
}

std::string ConstraintViolation::describe(const SorsModel& model) const {
  switch (kind) {
    case Kind::Budget:
      return "budget exceeded";
    case Kind::Social:
      return "social lower bound unmet for value type " + std::to_string(type_key);
    case Kind::Precedes:
      return "precedence violated: " + model.requirements[i].id +
             " selected without " + model.requirements[j].id;
    default:
      return "conflict violated: " + model.requirements[i].id + " and " +
             model.requirements[j].id + " both selected";
  }
}

PenaltyMatrix penalties(const SorsModel& model,
                        const std::vector<InfluenceMatrix>& influences,
                        const Selection& x) {
  check_dimensions(model, influences, x);
  const Index n = model.size();
  const Index types = model.type_count();
  PenaltyMatrix theta(n, types);
  for (Index k = 0; k < types; ++k) {
    const InfluenceMatrix& inf = influences[k];
    for (Index i = 0; i < n; ++i) {
      double worst = 0.0;
      for (Index j = 0; j < n; ++j) {
        if (j == i) continue;
        const double I = inf.at(i, j);
        // (|I| + (1-2x_j) I) / 2 without the arithmetic: an ignored positive
        // influencer costs I, a selected negative one costs -I.
        const double term = x[j] ? -I : I;
        if (term > worst) worst = term;
      }
      theta.at(i, k) = worst;
    }
  }
  return theta;
}

std::vector<ConstraintViolation> evaluate_feasibility(
    const SorsModel& model, const std::vector<InfluenceMatrix>& influences,
    const Selection& x) {
  return evaluate(model, influences, x).violations;
}

Evaluation evaluate(const SorsModel& model,
                    const std::vector<InfluenceMatrix>& influences,
                    const Selection& x) {
  check_dimensions(model, influences, x);
  const Index n = model.size();
  const Index types = model.type_count();

  Evaluation ev;
  ev.x = x;
  ev.penalty = penalties(model, influences, x);
  ev.per_type_totals.assign(types, 0.0);
  for (Index k = 0; k < types; ++k) {
    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
      if (!x[i]) continue;  // y_{i,k} = x_i theta_{i,k}, so unselected terms vanish
      const double v = model.requirements[i].values[k];
      total += v - ev.penalty.at(i, k) * v;
    }
    ev.per_type_totals[k] = total;
  }
  ev.objective = ev.per_type_totals[0];

  double cost = 0.0;
  for (Index i = 0; i < n; ++i) {
    if (x[i]) cost += model.requirements[i].cost;
  }
  if (cost > model.budget) {
    ev.violations.push_back({ConstraintViolation::Kind::Budget});
  }
  for (Index k = 1; k < types; ++k) {
    if (ev.per_type_totals[k] < model.social_bounds[k - 1]) {
      ConstraintViolation v{ConstraintViolation::Kind::Social};
      v.type_key = model.value_types[k].key;
      ev.violations.push_back(v);
    }
  }
  for (const PrecedenceConstraint& c : model.structural) {
    if (c.kind == StructuralKind::Precedes) {
      if (x[c.i] > x[c.j]) {
        ev.violations.push_back({ConstraintViolation::Kind::Precedes, 0, c.i, c.j});
      }
    } else {
      if (x[c.i] + x[c.j] > 1) {
        ev.violations.push_back({ConstraintViolation::Kind::Conflicts, 0, c.i, c.j});
      }
    }
  }
  ev.feasible = ev.violations.empty();
  return ev;
}

}  // namespace sors
