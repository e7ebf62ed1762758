#include <doctest.h>

#include <random>
#include <string>

#include "sors/oracle.hpp"
#include "sors/project_io.hpp"
#include "sors/report.hpp"
#include "support/generators.hpp"

using namespace sors;

namespace {

const char* kMinimalProject = R"({
  "schema_version": 1,
  "value_types": [{"key": 1, "name": "economic"}],
  "requirements": [{"id": "r1", "cost": 1.5, "values": {"1": 4.0}}],
  "budget": 0.0
})";

const char* kThreeNodeProject = R"({
  "schema_version": 1,
  "value_types": [{"key": 1, "name": "economic"}, {"key": 2, "name": "privacy"}],
  "requirements": [
    {"id": "r1", "cost": 5, "values": {"1": 10, "2": 3}},
    {"id": "r2", "cost": 4, "values": {"1": 8, "2": 2}},
    {"id": "r3", "cost": 3, "values": {"1": 6, "2": 5}}
  ],
  "dependencies": [
    {"type_key": 2, "source_id": "r1", "target_id": "r2", "quality": "+", "strength": 0.6},
    {"type_key": 2, "source_id": "r2", "target_id": "r3", "quality": "-", "strength": 0.5},
    {"type_key": 2, "source_id": "r1", "target_id": "r3", "quality": "+", "strength": 0.2}
  ],
  "structural": [{"kind": "precedes", "first_id": "r1", "second_id": "r2"}],
  "budget": 10,
  "social_bounds": {"2": 3.0}
})";

std::string patch(const std::string& text, const std::string& from, const std::string& to) {
  std::string out = text;
  const auto pos = out.find(from);
  REQUIRE(pos != std::string::npos);
  out.replace(pos, from.size(), to);
  return out;
}

bool graphs_equal(const ValueDependencyGraph& a, const ValueDependencyGraph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  for (const auto& [pair, e] : a.edges()) {
    const ExplicitDependency* other = b.edge(pair.first, pair.second);
    if (other == nullptr || other->quality != e.quality || other->strength != e.strength) {
      return false;
    }
  }
  return true;
}

bool models_equal(const SorsModel& a, const SorsModel& b) {
  if (a.type_count() != b.type_count() || a.size() != b.size()) return false;
  for (Index k = 0; k < a.type_count(); ++k) {
    if (a.value_types[k].key != b.value_types[k].key ||
        a.value_types[k].name != b.value_types[k].name) {
      return false;
    }
    if (!graphs_equal(a.vdgs[k], b.vdgs[k])) return false;
  }
  for (Index i = 0; i < a.size(); ++i) {
    if (a.requirements[i].id != b.requirements[i].id ||
        a.requirements[i].cost != b.requirements[i].cost ||
        a.requirements[i].values != b.requirements[i].values) {
      return false;
    }
  }
  if (a.budget != b.budget || a.social_bounds != b.social_bounds) return false;
  if (a.structural.size() != b.structural.size()) return false;
  for (std::size_t s = 0; s < a.structural.size(); ++s) {
    if (a.structural[s].kind != b.structural[s].kind ||
        a.structural[s].i != b.structural[s].i || a.structural[s].j != b.structural[s].j) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("a minimal project loads") {
  const LoadResult loaded = load_project(kMinimalProject);
  CHECK(loaded.model.size() == 1);
  CHECK(loaded.model.type_count() == 1);
  CHECK(loaded.model.requirements[0].id == "r1");
  CHECK(loaded.model.requirements[0].values == std::vector<double>{4.0});
  CHECK(loaded.model.budget == 0.0);
  CHECK(loaded.warnings.empty());
}

TEST_CASE("the three-node project loads with its structural pair") {
  const LoadResult loaded = load_project(kThreeNodeProject);
  const SorsModel& m = loaded.model;
  CHECK(m.size() == 3);
  CHECK(m.type_count() == 2);
  CHECK(m.social_bounds == std::vector<double>{3.0});
  REQUIRE(m.structural.size() == 1);
  // "r1 precedes r2" loads as x_[r2] <= x_[r1]
  CHECK(m.structural[0].kind == StructuralKind::Precedes);
  CHECK(m.structural[0].i == 1);
  CHECK(m.structural[0].j == 0);
  REQUIRE(m.vdgs[1].edge_count() == 3);
  CHECK(m.vdgs[1].edge(0, 1)->strength == 0.6);
  CHECK(m.vdgs[0].edge_count() == 0);
}

TEST_CASE("malformed JSON raises ParseError") {
  CHECK_THROWS_AS(load_project("{"), ParseError);
  CHECK_THROWS_AS(load_project(""), ParseError);
}

TEST_CASE("schema violations raise SchemaError") {
  CHECK_THROWS_AS(load_project("[1, 2]"), SchemaError);
  CHECK_THROWS_AS(load_project(R"({"schema_version": 2, "value_types": [],
    "requirements": [], "budget": 0})"),
                  SchemaError);
  CHECK_THROWS_AS(load_project(patch(kMinimalProject, "\"budget\": 0.0", "\"budget\": 0.0, \"extra\": 1")),
                  SchemaError);
  CHECK_THROWS_AS(load_project(patch(kMinimalProject, "\"cost\": 1.5, ", "")), SchemaError);
  CHECK_THROWS_AS(load_project(patch(kMinimalProject, "\"cost\": 1.5", "\"cost\": \"x\"")),
                  SchemaError);
}

TEST_CASE("validation failures name the offending record") {
  // strength out of range
  try {
    load_project(patch(kThreeNodeProject, "\"strength\": 0.6", "\"strength\": 1.5"));
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("$.dependencies[0]") != std::string::npos);
  }

  // duplicate edge for one ordered pair and type
  const std::string dup = patch(
      kThreeNodeProject,
      R"({"type_key": 2, "source_id": "r1", "target_id": "r3", "quality": "+", "strength": 0.2})",
      R"({"type_key": 2, "source_id": "r1", "target_id": "r2", "quality": "-", "strength": 0.1})");
  CHECK_THROWS_AS(load_project(dup), ValidationError);

  CHECK_THROWS_AS(load_project(patch(kThreeNodeProject, "\"target_id\": \"r2\"",
                                     "\"target_id\": \"nope\"")),
                  ValidationError);
  CHECK_THROWS_AS(load_project(patch(kThreeNodeProject, "\"quality\": \"+\"",
                                     "\"quality\": \"?\"")),
                  ValidationError);
  CHECK_THROWS_AS(load_project(patch(kMinimalProject, "\"cost\": 1.5", "\"cost\": -1")),
                  ValidationError);
  CHECK_THROWS_AS(load_project(patch(kMinimalProject, "\"budget\": 0.0", "\"budget\": -1")),
                  ValidationError);
  CHECK_THROWS_AS(
      load_project(patch(kMinimalProject, R"("requirements": [{"id": "r1", "cost": 1.5, "values": {"1": 4.0}}])",
                         R"("requirements": [])")),
      ValidationError);
  // duplicate ids
  CHECK_THROWS_AS(
      load_project(patch(kThreeNodeProject, "\"id\": \"r3\"", "\"id\": \"r1\"")),
      ValidationError);
  // value for an undeclared type
  CHECK_THROWS_AS(
      load_project(patch(kMinimalProject, R"("values": {"1": 4.0})", R"("values": {"1": 4.0, "9": 1})")),
      ValidationError);
  // missing value for a declared type
  CHECK_THROWS_AS(
      load_project(patch(kThreeNodeProject, R"("values": {"1": 10, "2": 3})", R"("values": {"1": 10})")),
      ValidationError);
  // social bound for the economic type
  CHECK_THROWS_AS(
      load_project(patch(kThreeNodeProject, R"("social_bounds": {"2": 3.0})", R"("social_bounds": {"1": 0, "2": 3.0})")),
      ValidationError);
  // missing social bound
  CHECK_THROWS_AS(
      load_project(patch(kThreeNodeProject, R"("social_bounds": {"2": 3.0})", R"("social_bounds": {})")),
      ValidationError);
  // key 1 must exist
  CHECK_THROWS_AS(
      load_project(patch(kMinimalProject, R"({"key": 1, "name": "economic"})", R"({"key": 2, "name": "x"})")),
      ValidationError);
  // self dependency
  CHECK_THROWS_AS(load_project(patch(kThreeNodeProject, "\"target_id\": \"r2\"",
                                     "\"target_id\": \"r1\"")),
                  ValidationError);
  // self structural pair
  CHECK_THROWS_AS(load_project(patch(kThreeNodeProject, "\"second_id\": \"r2\"",
                                     "\"second_id\": \"r1\"")),
                  ValidationError);
}

TEST_CASE("warnings surface without failing the load") {
  // unknown-sign dependency with positive strength
  const LoadResult unknown = load_project(
      patch(kThreeNodeProject, "\"quality\": \"+\"", "\"quality\": \"±\""));
  REQUIRE(unknown.warnings.size() == 1);
  CHECK(unknown.warnings[0].find("unknown-sign") != std::string::npos);
  // the edge is kept but contributes nothing
  CHECK(unknown.model.vdgs[1].edge(0, 1) != nullptr);
  const auto influences = compute_influences(unknown.model);
  CHECK(influences[1].at(0, 1) == 0.0);

  // duplicate structural pair
  const LoadResult dup = load_project(patch(
      kThreeNodeProject, R"([{"kind": "precedes", "first_id": "r1", "second_id": "r2"}])",
      R"([{"kind": "precedes", "first_id": "r1", "second_id": "r2"},
          {"kind": "precedes", "first_id": "r1", "second_id": "r2"}])"));
  REQUIRE(dup.warnings.size() == 1);
  CHECK(dup.warnings[0].find("duplicate precedes") != std::string::npos);
  CHECK(dup.model.structural.size() == 1);

  // precedes and conflicts on the same pair
  const LoadResult both = load_project(patch(
      kThreeNodeProject, R"([{"kind": "precedes", "first_id": "r1", "second_id": "r2"}])",
      R"([{"kind": "precedes", "first_id": "r1", "second_id": "r2"},
          {"kind": "conflicts", "first_id": "r1", "second_id": "r2"}])"));
  REQUIRE(both.warnings.size() == 1);
  CHECK(both.warnings[0].find("both precedes and conflicts") != std::string::npos);
  CHECK(both.model.structural.size() == 2);
}

TEST_CASE("mutual precedes pairs are kept, duplicate conflicts are not") {
  const LoadResult mutual = load_project(patch(
      kThreeNodeProject, R"([{"kind": "precedes", "first_id": "r1", "second_id": "r2"}])",
      R"([{"kind": "precedes", "first_id": "r1", "second_id": "r2"},
          {"kind": "precedes", "first_id": "r2", "second_id": "r1"}])"));
  CHECK(mutual.warnings.empty());
  CHECK(mutual.model.structural.size() == 2);  // forces x_1 = x_2

  const LoadResult flipped = load_project(patch(
      kThreeNodeProject, R"([{"kind": "precedes", "first_id": "r1", "second_id": "r2"}])",
      R"([{"kind": "conflicts", "first_id": "r1", "second_id": "r2"},
          {"kind": "conflicts", "first_id": "r2", "second_id": "r1"}])"));
  REQUIRE(flipped.warnings.size() == 1);
  CHECK(flipped.model.structural.size() == 1);
}

TEST_CASE("load - write - load is the identity on the model") {
  sorstest::Rng rng(4040);
  for (int trial = 0; trial < 25; ++trial) {
    sorstest::ModelParams params;
    params.n = std::uniform_int_distribution<Index>(1, 10)(rng);
    params.types = std::uniform_int_distribution<Index>(1, 3)(rng);
    params.density = 0.4;
    const SorsModel original = sorstest::random_model(rng, params);
    const LoadResult reloaded = load_project(write_project(original));
    CHECK(models_equal(original, reloaded.model));
    // a second round trip is byte-identical
    CHECK(write_project(reloaded.model) == write_project(original));
  }
  const LoadResult parsed = load_project(kThreeNodeProject);
  CHECK(models_equal(parsed.model, load_project(write_project(parsed.model)).model));
}
