#pragma once

#include <vector>

#include "oranopt/grid.hpp"
#include "oranopt/system_model.hpp"

namespace oranopt::problem {

// A complete decision: per (ue, step) one radio-unit index and one catalog
// index. The one-association / one-cipher rules hold by construction.
struct Assignment {
  Grid2<int> oru_of;     // (ue, step) -> radio unit
  Grid2<int> option_of;  // (ue, step) -> catalog option

  bool operator==(const Assignment&) const = default;
};

Assignment uniform_assignment(int n_ues, int horizon, int oru, int option);

enum class ConstraintKind {
  SecurityRequirement,  // cipher weaker than the radio unit demands
  ResourceBlocks,       // radio unit serving more devices than it has blocks
  ComputeBudget,        // cipher exceeds the device's per-block cycle cap
  Battery,              // horizon energy exceeds the device's battery
};

const char* to_string(ConstraintKind kind);

// Marks a violation that spans the whole horizon rather than one step.
inline constexpr int kWholeHorizon = -1;

struct ConstraintViolation {
  ConstraintKind kind;
  int subject;   // ue index, or the radio-unit index for ResourceBlocks
  int step;      // time step, kWholeHorizon for Battery
  double slack;  // negative value = violated amount
};

// Battery comparisons mix accumulated reals, so they get a small relative
// tolerance; cycle and block counts are compared exactly.
bool energy_within_budget(double energy_joules, double budget_joules);

// Checks every constraint and returns all violations (empty = feasible),
// in order: security requirement, resource blocks, compute budget, battery.
// Throws std::invalid_argument on dimension mismatch.
std::vector<ConstraintViolation> check(const Assignment& a,
                                       const model::Scenario& s);

enum class NormalizationMode {
  PerCell,    // each (ue, step) latency divided by that cell's maximum
  GlobalMax,  // every latency divided by the scenario-wide maximum
};

struct CellMetrics {
  double security_bits = 0.0;
  double latency_s = 0.0;
  double norm_security = 0.0;
  double norm_latency = 0.0;
};

struct ObjectiveReport {
  double alpha = 0.0;
  double security_term = 0.0;  // sum over cells of (1 - normalized security)
  double latency_term = 0.0;   // sum over cells of normalized latency
  double total = 0.0;          // (1 - alpha) * security_term + alpha * latency_term
  Grid2<CellMetrics> per_ue_step;

  double mean_norm_security() const;
  double mean_norm_latency() const;
  double mean_security_bits() const;
};

// The cached normalization maxima for a scenario.
const model::NormalizationBounds& normalization_bounds(const model::Scenario& s);

// Evaluates the weighted security/latency objective. Does not require the
// assignment to be feasible; solvers rank candidates before repair.
// alpha must lie in [0, 1].
ObjectiveReport objective(const Assignment& a, const model::Scenario& s,
                          double alpha,
                          NormalizationMode mode = NormalizationMode::PerCell);

}  // namespace oranopt::problem
