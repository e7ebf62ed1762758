#include <doctest.h>

#include <string>

#include "sors/lp_export.hpp"
#include "sors/model.hpp"

using namespace sors;

namespace {

SorsModel two_plain_requirements() {
  SorsModel m;
  m.value_types = {{1, "economic"}};
  m.requirements = {{"r1", 5.0, {10.0}}, {"r2", 4.0, {8.0}}};
  m.vdgs = {ValueDependencyGraph(2)};
  m.budget = 7.0;
  return m;
}

SorsModel three_node_model() {
  SorsModel m;
  m.value_types = {{1, "economic"}};
  m.requirements = {{"r1", 5.0, {10.0}}, {"r2", 4.0, {8.0}}, {"r3", 3.0, {6.0}}};
  ValueDependencyGraph g(3);
  g.add_edge(0, 1, Quality::Positive, 0.6);
  g.add_edge(1, 2, Quality::Negative, 0.5);
  g.add_edge(0, 2, Quality::Positive, 0.2);
  m.vdgs = {std::move(g)};
  m.budget = 10.0;
  return m;
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("numbers print with up to 12 significant digits, never scientific") {
  CHECK(lp_format_number(0.0) == "0");
  CHECK(lp_format_number(0.6) == "0.6");
  CHECK(lp_format_number(-0.3) == "-0.3");
  CHECK(lp_format_number(10.0) == "10");
  CHECK(lp_format_number(1e-5) == "0.00001");
  CHECK(lp_format_number(1.5e-7) == "0.00000015");
  CHECK(lp_format_number(1e15) == "1000000000000000");
  CHECK(lp_format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(lp_format_number(123456.789012) == "123456.789012");
}

TEST_CASE("an influence-free model exports only budget, objective, binaries") {
  const SorsModel m = two_plain_requirements();
  const LpDocument doc = export_lp(m, compute_influences(m));
  const std::string text = doc.to_text();

  CHECK(doc.objective.size() == 2);  // no y terms
  REQUIRE(doc.rows.size() == 1);
  CHECK(doc.rows[0].name == "budget");
  CHECK(doc.bounds.empty());
  CHECK(doc.binaries == std::vector<std::string>{"x1", "x2"});

  CHECK(contains(text, "Maximize\n obj: 10 x1 + 8 x2\n"));
  CHECK(contains(text, "budget: 5 x1 + 4 x2 <= 7"));
  CHECK_FALSE(contains(text, "theta"));
  CHECK_FALSE(contains(text, "g1"));
  CHECK(contains(text, "Binary\n x1 x2\nEnd\n"));
}

TEST_CASE("a precedes pair exports exactly one x_i - x_j row") {
  SorsModel m = two_plain_requirements();
  m.structural = {{StructuralKind::Precedes, 0, 1}};
  const std::string text = export_lp(m, compute_influences(m)).to_text();
  CHECK(contains(text, "prec1: x1 - x2 <= 0\n"));

  m.structural = {{StructuralKind::ConflictsWith, 0, 1}};
  const std::string conflict = export_lp(m, compute_influences(m)).to_text();
  CHECK(contains(conflict, "conf1: x1 + x2 <= 1\n"));
}

TEST_CASE("penalty rows appear only for nonzero influences") {
  const SorsModel m = three_node_model();
  const auto influences = compute_influences(m);
  const LpDocument doc = export_lp(m, influences);
  const std::string text = doc.to_text();

  // influences: I(1,2) = 0.6, I(1,3) = -0.3, I(2,3) = -0.5; rest zero
  CHECK(contains(text, "pen1_2_1: theta1_1 + 0.6 x2 >= 0.6\n"));
  CHECK(contains(text, "pen1_3_1: theta1_1 - 0.3 x3 >= 0\n"));
  CHECK(contains(text, "pen2_3_1: theta2_1 - 0.5 x3 >= 0\n"));
  CHECK_FALSE(contains(text, "pen2_1"));
  CHECK_FALSE(contains(text, "pen3_"));
  CHECK_FALSE(contains(text, "theta3_1"));  // r3 has no influencers

  // y/g machinery for the two penalized requirements
  CHECK(contains(text, "obj: 10 x1 - 10 y1_1 + 8 x2 - 8 y2_1 + 6 x3\n"));
  CHECK(contains(text, "xg_a1: x1 - g1 <= 0\n"));
  CHECK(contains(text, "xg_b1: x1 + g1 >= 0\n"));
  CHECK(contains(text, "xg_c1: x1 - g1 >= 0\n"));
  CHECK(contains(text, "xg_d1: x1 + g1 <= 2\n"));
  CHECK(contains(text, "yg_a1_1: y1_1 - g1 <= 0\n"));
  CHECK(contains(text, "yg_b1_1: y1_1 + g1 >= 0\n"));
  CHECK(contains(text, "yth_a1_1: y1_1 - theta1_1 + g1 <= 1\n"));
  CHECK(contains(text, "yth_b1_1: y1_1 - theta1_1 - g1 >= -1\n"));
  CHECK(contains(text, " 0 <= theta1_1 <= 1\n"));
  CHECK(contains(text, " 0 <= y2_1 <= 1\n"));
  CHECK(contains(text, "Binary\n x1 x2 x3 g1 g2\nEnd\n"));
}

TEST_CASE("social rows carry penalized totals") {
  SorsModel m = three_node_model();
  m.value_types.push_back({2, "privacy"});
  for (Index i = 0; i < 3; ++i) m.requirements[i].values.push_back(double(i + 1));
  ValueDependencyGraph social(3);
  social.add_edge(0, 2, Quality::Negative, 0.4);
  m.vdgs.push_back(std::move(social));
  m.social_bounds = {2.5};
  const std::string text = export_lp(m, compute_influences(m)).to_text();
  CHECK(contains(text, "social_2: x1 - y1_2 + 2 x2 + 3 x3 >= 2.5\n"));
  CHECK(contains(text, "pen1_3_2: theta1_2 - 0.4 x3 >= 0\n"));
}

TEST_CASE("export is byte-stable") {
  const SorsModel m = three_node_model();
  const auto influences = compute_influences(m);
  CHECK(export_lp(m, influences).to_text() == export_lp(m, influences).to_text());
}

TEST_CASE("documents validate their variable references") {
  LpDocument doc;
  doc.objective = {{1.0, "x1"}};
  doc.binaries = {"x1"};
  CHECK_NOTHROW(doc.check());

  doc.rows.push_back({"row1", {{1.0, "ghost"}}, '<', 0.0});
  CHECK_THROWS_AS(doc.check(), ValidationError);

  doc.rows[0].terms[0].variable = "x1";
  doc.rows.push_back({"row1", {{1.0, "x1"}}, '<', 1.0});
  CHECK_THROWS_AS(doc.check(), ValidationError);  // duplicate row name
}

TEST_CASE("long objectives wrap without losing terms") {
  SorsModel m;
  m.value_types = {{1, "economic"}};
  ValueDependencyGraph g(30);
  for (int i = 0; i < 30; ++i) {
    m.requirements.push_back({"q" + std::to_string(i), 1.5, {3.25}});
  }
  m.vdgs = {std::move(g)};
  m.budget = 20.0;
  const std::string text = export_lp(m, compute_influences(m)).to_text();
  int count = 0;
  for (std::size_t pos = text.find("x"); pos != std::string::npos;
       pos = text.find("x", pos + 1)) {
    ++count;
  }
  CHECK(count >= 60);  // every x appears in objective and budget
  for (std::size_t start = 0, end = text.find('\n'); end != std::string::npos;
       start = end + 1, end = text.find('\n', start)) {
    CHECK(end - start <= 90);
  }
}
