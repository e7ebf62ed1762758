#include "sors/project_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace sors {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw SchemaError(path + ": " + what);
}

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

void require_object(const json& node, const std::string& path,
                    std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional) {
  if (!node.is_object()) schema_error(path, "expected an object");
  for (const char* key : required) {
    if (!node.contains(key)) schema_error(path, std::string("missing field '") + key + "'");
  }
  for (const auto& [key, value] : node.items()) {
    auto known = [&](std::initializer_list<const char*> list) {
      return std::any_of(list.begin(), list.end(),
                         [&](const char* k) { return key == k; });
    };
    if (!known(required) && !known(optional)) {
      schema_error(path, "unknown field '" + key + "'");
    }
  }
}

double get_number(const json& node, const std::string& path) {
  if (!node.is_number()) schema_error(path, "expected a number");
  return node.get<double>();
}

std::string get_string(const json& node, const std::string& path) {
  if (!node.is_string()) schema_error(path, "expected a string");
  return node.get<std::string>();
}

int get_type_key(const json& node, const std::string& path) {
  if (!node.is_number_integer()) schema_error(path, "expected an integer value-type key");
  const auto key = node.get<std::int64_t>();
  if (key < 1) invalid(path, "value-type keys start at 1");
  return static_cast<int>(key);
}

int parse_key_string(const std::string& key, const std::string& path) {
  std::size_t used = 0;
  int parsed = 0;
  try {
    parsed = std::stoi(key, &used);
  } catch (const std::exception&) {
    schema_error(path, "key '" + key + "' is not an integer value-type key");
  }
  if (used != key.size() || parsed < 1) {
    schema_error(path, "key '" + key + "' is not a valid value-type key");
  }
  return parsed;
}

Quality parse_quality(const std::string& symbol, const std::string& path) {
  if (symbol == "+") return Quality::Positive;
  if (symbol == "-") return Quality::Negative;
  if (symbol == "±") return Quality::Unknown;
  invalid(path, "quality must be one of \"+\", \"-\", \"±\", got \"" + symbol + "\"");
}

}  // namespace

LoadResult load_project(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }

  require_object(root, "$",
                 {"schema_version", "value_types", "requirements", "budget"},
                 {"dependencies", "structural", "social_bounds"});

  if (!root["schema_version"].is_number_integer() ||
      root["schema_version"].get<int>() != 1) {
    schema_error("$.schema_version", "this reader supports schema_version 1");
  }

  LoadResult result;
  SorsModel& model = result.model;

  // value types, sorted by key; key 1 is the economic value
  const json& types_node = root["value_types"];
  if (!types_node.is_array() || types_node.empty()) {
    schema_error("$.value_types", "expected a non-empty array");
  }
  std::map<int, std::string> type_names;
  for (std::size_t t = 0; t < types_node.size(); ++t) {
    const std::string path = "$.value_types[" + std::to_string(t) + "]";
    const json& node = types_node[t];
    require_object(node, path, {"key", "name"}, {});
    const int key = get_type_key(node["key"], path + ".key");
    if (!type_names.emplace(key, get_string(node["name"], path + ".name")).second) {
      invalid(path, "duplicate value-type key " + std::to_string(key));
    }
  }
  if (!type_names.contains(1)) {
    invalid("$.value_types", "value type with key 1 (economic) is required");
  }
  std::map<int, Index> type_index;
  for (const auto& [key, name] : type_names) {
    type_index.emplace(key, model.value_types.size());
    model.value_types.push_back({key, name});
  }
  const Index type_count = model.value_types.size();

  // requirements; ids map to indices in file order
  const json& reqs_node = root["requirements"];
  if (!reqs_node.is_array()) schema_error("$.requirements", "expected an array");
  if (reqs_node.empty()) invalid("$.requirements", "at least one requirement is required");
  std::map<std::string, Index> id_index;
  for (std::size_t r = 0; r < reqs_node.size(); ++r) {
    const std::string path = "$.requirements[" + std::to_string(r) + "]";
    const json& node = reqs_node[r];
    require_object(node, path, {"id", "cost", "values"}, {});
    Requirement req;
    req.id = get_string(node["id"], path + ".id");
    if (req.id.empty()) invalid(path + ".id", "requirement id must be non-empty");
    if (!id_index.emplace(req.id, model.requirements.size()).second) {
      invalid(path + ".id", "duplicate requirement id \"" + req.id + "\"");
    }
    req.cost = get_number(node["cost"], path + ".cost");
    if (req.cost < 0.0) invalid(path + ".cost", "cost must be nonnegative");
    const json& values = node["values"];
    if (!values.is_object()) schema_error(path + ".values", "expected an object");
    req.values.assign(type_count, 0.0);
    std::vector<bool> covered(type_count, false);
    for (const auto& [key_str, value] : values.items()) {
      const std::string vpath = path + ".values[\"" + key_str + "\"]";
      const int key = parse_key_string(key_str, vpath);
      auto it = type_index.find(key);
      if (it == type_index.end()) {
        invalid(vpath, "value for undeclared type key " + std::to_string(key));
      }
      const double v = get_number(value, vpath);
      if (v < 0.0) invalid(vpath, "values must be nonnegative");
      req.values[it->second] = v;
      covered[it->second] = true;
    }
    for (Index k = 0; k < type_count; ++k) {
      if (!covered[k]) {
        invalid(path + ".values", "missing value for type key " +
                                      std::to_string(model.value_types[k].key));
      }
    }
    model.requirements.push_back(std::move(req));
  }
  const Index n = model.requirements.size();

  model.budget = get_number(root["budget"], "$.budget");
  if (model.budget < 0.0) invalid("$.budget", "budget must be nonnegative");

  // social lower bounds: exactly the keys >= 2
  model.social_bounds.assign(type_count == 0 ? 0 : type_count - 1, 0.0);
  std::vector<bool> bounded(type_count, false);
  if (root.contains("social_bounds")) {
    const json& bounds = root["social_bounds"];
    if (!bounds.is_object()) schema_error("$.social_bounds", "expected an object");
    for (const auto& [key_str, value] : bounds.items()) {
      const std::string bpath = "$.social_bounds[\"" + key_str + "\"]";
      const int key = parse_key_string(key_str, bpath);
      if (key == 1) invalid(bpath, "the economic value (key 1) takes no lower bound");
      auto it = type_index.find(key);
      if (it == type_index.end()) {
        invalid(bpath, "bound for undeclared type key " + std::to_string(key));
      }
      model.social_bounds[it->second - 1] = get_number(value, bpath);
      bounded[it->second] = true;
    }
  }
  for (Index k = 1; k < type_count; ++k) {
    if (!bounded[k]) {
      invalid("$.social_bounds", "missing lower bound for type key " +
                                     std::to_string(model.value_types[k].key));
    }
  }

  // dependency edges, one graph per value type
  model.vdgs.assign(type_count, ValueDependencyGraph(n));
  if (root.contains("dependencies")) {
    const json& deps = root["dependencies"];
    if (!deps.is_array()) schema_error("$.dependencies", "expected an array");
    for (std::size_t d = 0; d < deps.size(); ++d) {
      const std::string path = "$.dependencies[" + std::to_string(d) + "]";
      const json& node = deps[d];
      require_object(node, path, {"type_key", "source_id", "target_id", "quality", "strength"},
                     {});
      const int key = get_type_key(node["type_key"], path + ".type_key");
      auto type_it = type_index.find(key);
      if (type_it == type_index.end()) {
        invalid(path + ".type_key", "undeclared type key " + std::to_string(key));
      }
      const std::string source = get_string(node["source_id"], path + ".source_id");
      const std::string target = get_string(node["target_id"], path + ".target_id");
      auto source_it = id_index.find(source);
      if (source_it == id_index.end()) {
        invalid(path + ".source_id", "unknown requirement id \"" + source + "\"");
      }
      auto target_it = id_index.find(target);
      if (target_it == id_index.end()) {
        invalid(path + ".target_id", "unknown requirement id \"" + target + "\"");
      }
      ExplicitDependency edge;
      edge.source = source_it->second;
      edge.target = target_it->second;
      edge.quality = parse_quality(get_string(node["quality"], path + ".quality"),
                                   path + ".quality");
      edge.strength = get_number(node["strength"], path + ".strength");
      if (edge.source == edge.target) {
        invalid(path, "self-dependency on \"" + source + "\"");
      }
      if (!(edge.strength >= 0.0 && edge.strength <= 1.0)) {
        invalid(path + ".strength", "strength must lie in [0, 1]");
      }
      if (model.vdgs[type_it->second].edge(edge.source, edge.target) != nullptr) {
        invalid(path, "duplicate dependency for pair (\"" + source + "\", \"" + target +
                          "\") and type key " + std::to_string(key));
      }
      model.vdgs[type_it->second].add_edge(edge);
      if (edge.quality == Quality::Unknown && edge.strength > 0.0) {
        result.warnings.push_back(
            path + ": unknown-sign dependency with positive strength contributes to no "
                   "aggregate and is ignored by the influence computation");
      }
    }
  }

  // structural couplings
  if (root.contains("structural")) {
    const json& structural = root["structural"];
    if (!structural.is_array()) schema_error("$.structural", "expected an array");
    std::set<std::pair<Index, Index>> precedes_seen;
    std::set<std::pair<Index, Index>> conflicts_seen;
    for (std::size_t s = 0; s < structural.size(); ++s) {
      const std::string path = "$.structural[" + std::to_string(s) + "]";
      const json& node = structural[s];
      require_object(node, path, {"kind", "first_id", "second_id"}, {});
      const std::string kind = get_string(node["kind"], path + ".kind");
      const std::string first = get_string(node["first_id"], path + ".first_id");
      const std::string second = get_string(node["second_id"], path + ".second_id");
      auto first_it = id_index.find(first);
      if (first_it == id_index.end()) {
        invalid(path + ".first_id", "unknown requirement id \"" + first + "\"");
      }
      auto second_it = id_index.find(second);
      if (second_it == id_index.end()) {
        invalid(path + ".second_id", "unknown requirement id \"" + second + "\"");
      }
      if (first_it->second == second_it->second) {
        invalid(path, "structural pair relates \"" + first + "\" to itself");
      }
      if (kind == "precedes") {
        // "first precedes second": second is selectable only with first
        const std::pair<Index, Index> pair{second_it->second, first_it->second};
        if (!precedes_seen.insert(pair).second) {
          result.warnings.push_back(path + ": duplicate precedes pair (\"" + first +
                                    "\", \"" + second + "\") ignored");
          continue;
        }
        model.structural.push_back({StructuralKind::Precedes, pair.first, pair.second});
      } else if (kind == "conflicts") {
        const std::pair<Index, Index> pair{
            std::min(first_it->second, second_it->second),
            std::max(first_it->second, second_it->second)};
        if (!conflicts_seen.insert(pair).second) {
          result.warnings.push_back(path + ": duplicate conflicts pair (\"" + first +
                                    "\", \"" + second + "\") ignored");
          continue;
        }
        model.structural.push_back({StructuralKind::ConflictsWith, pair.first, pair.second});
      } else {
        invalid(path + ".kind", "kind must be \"precedes\" or \"conflicts\"");
      }
    }
    // a pair under both kinds simply forces both requirements out
    for (const auto& [i, j] : precedes_seen) {
      if (conflicts_seen.contains({std::min(i, j), std::max(i, j)})) {
        result.warnings.push_back("structural: pair (\"" + model.requirements[i].id +
                                  "\", \"" + model.requirements[j].id +
                                  "\") is constrained by both precedes and conflicts; "
                                  "together they exclude the dependent requirement");
      }
    }
  }

  validate_model(model);
  return result;
}

LoadResult load_project_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_project(buffer.str());
}

std::string write_project(const SorsModel& model) {
  validate_model(model);
  ordered_json root;
  root["schema_version"] = 1;

  ordered_json types = ordered_json::array();
  for (const ValueType& t : model.value_types) {
    types.push_back({{"key", t.key}, {"name", t.name}});
  }
  root["value_types"] = std::move(types);

  ordered_json requirements = ordered_json::array();
  for (const Requirement& r : model.requirements) {
    ordered_json values;
    for (Index k = 0; k < model.type_count(); ++k) {
      values[std::to_string(model.value_types[k].key)] = r.values[k];
    }
    requirements.push_back({{"id", r.id}, {"cost", r.cost}, {"values", std::move(values)}});
  }
  root["requirements"] = std::move(requirements);

  root["budget"] = model.budget;

  ordered_json bounds = ordered_json::object();
  for (Index k = 1; k < model.type_count(); ++k) {
    bounds[std::to_string(model.value_types[k].key)] = model.social_bounds[k - 1];
  }
  root["social_bounds"] = std::move(bounds);

  ordered_json dependencies = ordered_json::array();
  for (Index k = 0; k < model.type_count(); ++k) {
    for (const auto& [pair, e] : model.vdgs[k].edges()) {
      dependencies.push_back({{"type_key", model.value_types[k].key},
                              {"source_id", model.requirements[e.source].id},
                              {"target_id", model.requirements[e.target].id},
                              {"quality", std::string(quality_symbol(e.quality))},
                              {"strength", e.strength}});
    }
  }
  root["dependencies"] = std::move(dependencies);

  ordered_json structural = ordered_json::array();
  for (const PrecedenceConstraint& c : model.structural) {
    if (c.kind == StructuralKind::Precedes) {
      // stored as x_i <= x_j, i.e. requirement j precedes requirement i
      structural.push_back({{"kind", "precedes"},
                            {"first_id", model.requirements[c.j].id},
                            {"second_id", model.requirements[c.i].id}});
    } else {
      structural.push_back({{"kind", "conflicts"},
                            {"first_id", model.requirements[c.i].id},
                            {"second_id", model.requirements[c.j].id}});
    }
  }
  root["structural"] = std::move(structural);

  return root.dump(2) + "\n";
}

}  // namespace sors
