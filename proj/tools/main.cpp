#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sors/lp_export.hpp"
#include "sors/oracle.hpp"
#include "sors/project_io.hpp"
#include "sors/report.hpp"
#include "sors/solver.hpp"

namespace {

// exit codes: 0 ok/optimal, 1 errors, 2 infeasible, 3 limit reached
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitLimit = 3;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw sors::Error("cannot open " + out_path + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

int run_validate(const std::string& input) {
  sors::LoadResult loaded = sors::load_project_file(input);
  std::cout << "ok: " << loaded.model.size() << " requirements, "
            << loaded.model.type_count() << " value types, "
            << loaded.model.structural.size() << " structural pairs\n";
  for (const std::string& w : loaded.warnings) {
    std::cout << "warning: " << w << "\n";
  }
  return kExitOk;
}

int run_influence(const std::string& input, int type_key) {
  sors::LoadResult loaded = sors::load_project_file(input);
  const sors::SorsModel& model = loaded.model;
  sors::Index type = model.type_count();
  for (sors::Index k = 0; k < model.type_count(); ++k) {
    if (model.value_types[k].key == type_key) type = k;
  }
  if (type == model.type_count()) {
    throw sors::ValidationError("no value type with key " + std::to_string(type_key));
  }
  const sors::InfluenceMatrix matrix =
      sors::influence(sors::aggregate_strengths(model.vdgs[type]));

  std::size_t width = 8;
  for (const sors::Requirement& r : model.requirements) {
    width = std::max(width, r.id.size() + 2);
  }
  std::string out(width, ' ');
  for (const sors::Requirement& r : model.requirements) {
    out += std::string(width - r.id.size(), ' ') + r.id;
  }
  out += '\n';
  char cell[32];
  for (sors::Index i = 0; i < model.size(); ++i) {
    const std::string& id = model.requirements[i].id;
    out += id + std::string(width - id.size(), ' ');
    for (sors::Index j = 0; j < model.size(); ++j) {
      std::snprintf(cell, sizeof cell, "%*.4f", static_cast<int>(width), matrix.at(i, j));
      out += cell;
    }
    out += '\n';
  }
  std::fwrite(out.data(), 1, out.size(), stdout);
  return kExitOk;
}

int run_solve(const std::string& input, const std::string& backend, unsigned threads,
              double time_limit, const std::string& report_format,
              const std::string& out_path) {
  sors::LoadResult loaded = sors::load_project_file(input);

  sors::SolverConfig cfg;
  cfg.backend = backend == "exhaustive" ? sors::Backend::Exhaustive
                                        : sors::Backend::BranchAndBound;
  cfg.threads = threads;
  if (time_limit > 0) cfg.time_limit = std::chrono::duration<double>(time_limit);

  sors::Solution solution = sors::solve(loaded.model, cfg);

  const sors::ReportFormat format =
      report_format == "text" ? sors::ReportFormat::Text : sors::ReportFormat::Json;
  write_output(sors::write_report(solution, loaded.model, format, loaded.warnings),
               out_path);
  std::cerr << "solve: " << sors::to_string(solution.status) << ", "
            << solution.stats.nodes << " nodes, " << solution.stats.wall_seconds
            << " s\n";

  switch (solution.status) {
    case sors::SolveStatus::Optimal: return kExitOk;
    case sors::SolveStatus::Infeasible: return kExitInfeasible;
    default: return kExitLimit;
  }
}

int run_export_lp(const std::string& input, const std::string& out_path) {
  sors::LoadResult loaded = sors::load_project_file(input);
  const sors::LpDocument doc =
      sors::export_lp(loaded.model, sors::compute_influences(loaded.model));
  write_output(doc.to_text(), out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"requirement selection under fuzzy signed value dependencies"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string backend = "bnb";
  std::string report_format = "json";
  unsigned threads = 1;
  double time_limit = 0.0;
  int type_key = 1;

  CLI::App* validate = app.add_subcommand("validate", "check a project file");
  validate->add_option("file", input, "project JSON file")->required();

  CLI::App* influence = app.add_subcommand(
      "influence", "print the influence matrix of one value type");
  influence->add_option("file", input, "project JSON file")->required();
  influence->add_option("--type", type_key, "value-type key (default 1, economic)");

  CLI::App* solve = app.add_subcommand("solve", "select the optimal subset");
  solve->add_option("file", input, "project JSON file")->required();
  solve->add_option("--backend", backend, "bnb or exhaustive")
      ->check(CLI::IsMember({"bnb", "exhaustive"}));
  solve->add_option("--threads", threads, "worker threads (default 1)");
  solve->add_option("--time-limit", time_limit, "time limit in seconds");
  solve->add_option("--report", report_format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  solve->add_option("-o,--output", output, "write the report here instead of stdout");

  CLI::App* export_lp = app.add_subcommand("export-lp", "write the model in LP format");
  export_lp->add_option("file", input, "project JSON file")->required();
  export_lp->add_option("-o,--output", output, "write the LP document here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (validate->parsed()) return run_validate(input);
    if (influence->parsed()) return run_influence(input, type_key);
    if (solve->parsed()) {
      return run_solve(input, backend, threads, time_limit, report_format, output);
    }
    return run_export_lp(input, output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
