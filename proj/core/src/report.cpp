#include "sors/report.hpp"

#include <cstdio>
#include <string>

#include <json.hpp>

namespace sors {

namespace {

using ordered_json = nlohmann::ordered_json;

// shortest round-trip rendering, same as the json serializer uses
std::string format_double(double v) { return nlohmann::json(v).dump(); }

std::string format_theta(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string json_report(const Solution& sol, const SorsModel& model,
                        const std::vector<std::string>& warnings) {
  const Index n = model.size();
  ordered_json root;
  root["status"] = std::string(to_string(sol.status));
  root["feasible"] = sol.feasible;
  root["objective"] = sol.objective;

  ordered_json selected = ordered_json::array();
  ordered_json rejected = ordered_json::array();
  double used = 0.0;
  for (Index i = 0; i < n; ++i) {
    if (sol.x[i]) {
      selected.push_back(model.requirements[i].id);
      used += model.requirements[i].cost;
    } else {
      rejected.push_back(model.requirements[i].id);
    }
  }
  root["selected"] = std::move(selected);
  root["rejected"] = std::move(rejected);
  root["budget"] = {{"limit", model.budget}, {"used", used}, {"slack", model.budget - used}};

  ordered_json totals = ordered_json::array();
  for (Index k = 0; k < model.type_count(); ++k) {
    ordered_json entry{{"type_key", model.value_types[k].key},
                       {"name", model.value_types[k].name},
                       {"total", sol.per_type_totals[k]}};
    if (k > 0) {
      entry["alpha"] = model.social_bounds[k - 1];
      entry["margin"] = sol.per_type_totals[k] - model.social_bounds[k - 1];
    }
    totals.push_back(std::move(entry));
  }
  root["totals"] = std::move(totals);

  ordered_json penalties = ordered_json::array();
  for (Index i = 0; i < n; ++i) {
    ordered_json theta = ordered_json::object();
    for (Index k = 0; k < model.type_count(); ++k) {
      theta[std::to_string(model.value_types[k].key)] = sol.penalty.at(i, k);
    }
    penalties.push_back({{"id", model.requirements[i].id}, {"theta", std::move(theta)}});
  }
  root["penalties"] = std::move(penalties);

  ordered_json violations = ordered_json::array();
  for (const ConstraintViolation& v : sol.violations) {
    violations.push_back(v.describe(model));
  }
  root["violations"] = std::move(violations);

  ordered_json solver{{"backend", sol.stats.backend}, {"nodes", sol.stats.nodes}};
  if (sol.status == SolveStatus::LimitReached) {
    solver["best_bound"] = sol.stats.best_bound;
    solver["gap"] = sol.stats.best_bound - sol.objective;
  }
  root["solver"] = std::move(solver);

  root["warnings"] = warnings;
  return root.dump(2) + "\n";
}

std::string text_report(const Solution& sol, const SorsModel& model,
                        const std::vector<std::string>& warnings) {
  const Index n = model.size();
  std::string out;
  out += "status: ";
  out += to_string(sol.status);
  out += "\nobjective: " + format_double(sol.objective);

  double used = 0.0;
  std::vector<std::string> selected, rejected;
  for (Index i = 0; i < n; ++i) {
    if (sol.x[i]) {
      selected.push_back(model.requirements[i].id);
      used += model.requirements[i].cost;
    } else {
      rejected.push_back(model.requirements[i].id);
    }
  }
  out += "\nbudget: used " + format_double(used) + " of " + format_double(model.budget);
  auto join = [](const std::vector<std::string>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) s += ", ";
      s += ids[i];
    }
    return s.empty() ? std::string("(none)") : s;
  };
  out += "\nselected (" + std::to_string(selected.size()) + "): " + join(selected);
  out += "\nrejected (" + std::to_string(rejected.size()) + "): " + join(rejected);

  out += "\nvalue totals:";
  for (Index k = 0; k < model.type_count(); ++k) {
    out += "\n  type " + std::to_string(model.value_types[k].key) + " (" +
           model.value_types[k].name + "): " + format_double(sol.per_type_totals[k]);
    if (k > 0) {
      const double alpha = model.social_bounds[k - 1];
      out += "  [alpha " + format_double(alpha) + ", margin " +
             format_double(sol.per_type_totals[k] - alpha) + "]";
    }
  }

  out += "\npenalties (theta):";
  std::size_t id_width = 11;  // "requirement"
  for (const Requirement& r : model.requirements) id_width = std::max(id_width, r.id.size());
  out += "\n  " + std::string("requirement") + std::string(id_width - 11, ' ');
  for (Index k = 0; k < model.type_count(); ++k) {
    std::string label = "t" + std::to_string(model.value_types[k].key);
    if (label.size() < 6) label.append(6 - label.size(), ' ');
    out += "  " + label;
  }
  for (Index i = 0; i < n; ++i) {
    out += "\n  " + model.requirements[i].id +
           std::string(id_width - model.requirements[i].id.size(), ' ');
    for (Index k = 0; k < model.type_count(); ++k) {
      out += "  " + format_theta(sol.penalty.at(i, k));
    }
  }

  if (!sol.violations.empty()) {
    out += "\nviolations:";
    for (const ConstraintViolation& v : sol.violations) {
      out += "\n  - " + v.describe(model);
    }
  }

  out += "\nsolver: backend=" + sol.stats.backend +
         " nodes=" + std::to_string(sol.stats.nodes);
  if (sol.status == SolveStatus::LimitReached) {
    out += " best_bound=" + format_double(sol.stats.best_bound) +
           " gap=" + format_double(sol.stats.best_bound - sol.objective);
  }

  if (warnings.empty()) {
    out += "\nwarnings: none";
  } else {
    out += "\nwarnings:";
    for (const std::string& w : warnings) out += "\n  - " + w;
  }
  out += "\n";
  return out;
}

}  // namespace

std::string write_report(const Solution& solution, const SorsModel& model,
                         ReportFormat format, const std::vector<std::string>& warnings) {
  if (solution.x.size() != model.size() ||
      solution.per_type_totals.size() != model.type_count() ||
      solution.penalty.size() != model.size()) {
    throw DimensionMismatchError("solution does not belong to this model");
  }
  return format == ReportFormat::Json ? json_report(solution, model, warnings)
                                      : text_report(solution, model, warnings);
}

}  // namespace sors
