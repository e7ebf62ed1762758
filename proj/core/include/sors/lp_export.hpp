#pragma once

#include <string>
#include <vector>

#include "sors/model.hpp"

namespace sors {

struct LpTerm {
  double coefficient = 0.0;
  std::string variable;
};

/// One linear constraint row. sense is '<' for <= and '>' for >=.
struct LpRow {
  std::string name;
  std::vector<LpTerm> terms;
  char sense = '<';
  double rhs = 0.0;
};

struct LpBound {
  std::string variable;
  double lower = 0.0;
  double upper = 1.0;
};

/// The linearized selection program as structured rows, renderable as a
/// CPLEX-LP text document (Maximize / Subject To / Bounds / Binary sections,
/// UTF-8, LF line endings). Output is byte-stable for identical inputs.
struct LpDocument {
  std::vector<std::string> comments;
  std::vector<LpTerm> objective;  // maximized
  std::vector<LpRow> rows;
  std::vector<LpBound> bounds;    // continuous variables
  std::vector<std::string> binaries;

  /// Throws ValidationError if a row or objective references an undeclared
  /// variable or a name is empty/too long.
  void check() const;

  std::string to_text() const;
};

/// Builds the exact linearized integer program of the model:
/// binary x_i/g_i, continuous theta/y per requirement and value type where
/// influences exist, budget and social rows, structural rows, one penalty row
/// per nonzero influence, and the g-linking rows tying y to x * theta.
LpDocument export_lp(const SorsModel& model,
                     const std::vector<InfluenceMatrix>& influences);

/// Numeric literal with up to 12 significant digits, never scientific.
std::string lp_format_number(double v);

}  // namespace sors
