#pragma once

#include <string>
#include <vector>

#include "sors/model.hpp"
#include "sors/solver.hpp"

namespace sors {

enum class ReportFormat { Json, Text };

/// Serializes a solution for the given model. Deterministic: identical
/// solution and model produce byte-identical output (volatile data such as
/// wall-clock time never enters a report). The json form is
/// machine-parseable; the text form is a human-readable summary.
std::string write_report(const Solution& solution, const SorsModel& model,
                         ReportFormat format,
                         const std::vector<std::string>& warnings = {});

}  // namespace sors
