#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "oranopt/scenario.hpp"
#include "oranopt/solvers.hpp"

namespace oranopt::harness {

std::string artifact_version();

enum class SolverKind { Exhaustive, Myopic, Iterative, OneShot };

const char* to_string(SolverKind kind);
SolverKind solver_from_string(const std::string& name);

struct SolverSetup {
  std::vector<SolverKind> solvers{SolverKind::Iterative, SolverKind::OneShot};
  solvers::ExhaustiveConfig exhaustive;
  solvers::IterativeConfig iterative;
  solvers::OneShotConfig oneshot;
};

solvers::SolveOutcome run_solver(SolverKind kind, const model::Scenario& s,
                                 double alpha, const SolverSetup& setup);

// A named (cycle budget, battery) band for the resource sweep.
struct ResourceTier {
  std::string name;
  scenario::Range compute_budget_cycles;
  scenario::Range battery_joules;
};

// low / medium / high bands: low pins every device below the cheapest AES
// option, high admits the whole catalog.
std::vector<ResourceTier> default_tiers();

// Everything an experiment needs to reproduce its outputs byte for byte
// (solve wall times live in the run log, not in result rows).
struct RunManifest {
  std::string experiment;
  std::optional<scenario::GenParams> gen;  // generated instance, or
  std::string scenario_path;               // loaded from this file
  SolverSetup setup;
  double alpha = 0.5;
  std::vector<double> alpha_grid;
  std::vector<double> w_grid;
  std::vector<ResourceTier> tiers = default_tiers();
};

struct ResultsTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string to_csv() const;
};

struct RunLog {
  std::vector<std::pair<std::string, double>> wall_time_s;  // label -> seconds
};

// The instance an experiment runs on: generated from manifest.gen or loaded
// from manifest.scenario_path.
model::Scenario manifest_scenario(const RunManifest& manifest);

// One row per (alpha, solver): status plus normalized latency / security
// aggregates. Infeasible solves keep their row with empty metric cells.
ResultsTable sweep_alpha(const RunManifest& manifest, RunLog* log = nullptr);

// One row per (requirement, solver) with every radio unit's requirement set
// to the grid value. Grid values must be catalog security levels.
ResultsTable sweep_security_requirement(const RunManifest& manifest,
                                        RunLog* log = nullptr);

// One row per (tier, solver); tiers regenerate the instance with the same
// seed so only the cycle-budget and battery ranges differ.
ResultsTable sweep_resources(const RunManifest& manifest, RunLog* log = nullptr);

// Objective value per iteration of the iterative solver.
ResultsTable trace_convergence(const RunManifest& manifest, RunLog* log = nullptr);

// Remaining battery and security level per (solver, ue, step). Solvers that
// fail mid-horizon report the steps they completed.
ResultsTable trace_battery(const RunManifest& manifest, RunLog* log = nullptr);

// Invariant suite over a scenario; prints one line per check.
bool run_verification(const model::Scenario& s, std::ostream& out);

std::string manifest_json_text(const RunManifest& manifest, const RunLog& log,
                               const std::vector<std::string>& outputs);

void write_text(const std::filesystem::path& path, const std::string& text);

// Locale-independent shortest round-trip formatting.
std::string format_double(double v);

}  // namespace oranopt::harness
