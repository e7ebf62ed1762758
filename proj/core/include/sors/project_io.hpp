#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sors/model.hpp"

namespace sors {

struct LoadResult {
  SorsModel model;
  std::vector<std::string> warnings;
};

/// Parses and fully validates a schema_version-1 project document.
///
/// Requirement ids map to dense indices in file order. Throws ParseError for
/// malformed JSON, SchemaError for missing/unknown/mistyped fields, and
/// ValidationError (naming the offending record) for invariant breaches.
/// Warnings are returned for unknown-sign edges with positive strength,
/// duplicate structural pairs (dropped), and pairs constrained as both
/// precedes and conflicts-with.
LoadResult load_project(std::string_view text);

/// load_project over a file's contents.
LoadResult load_project_file(const std::string& path);

/// Canonical project JSON for the model; load_project(write_project(m))
/// reproduces m exactly.
std::string write_project(const SorsModel& model);

}  // namespace sors
