#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oranopt/problem.hpp"
#include "oranopt/system_model.hpp"

namespace oranopt::solvers {

enum class SolveStatus { Optimal, Feasible, Infeasible, IterationLimit };

const char* to_string(SolveStatus status);

// True for every status that carries a constraint-satisfying assignment.
bool has_solution(SolveStatus status);

struct TraceEntry {
  int iteration = 0;       // iteration, penalty round, or time step
  double objective = 0.0;  // objective value after the recorded solve
  std::string block;       // which subproblem produced it
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<problem::Assignment> assignment;      // set unless Infeasible
  std::optional<problem::ObjectiveReport> report;     // set unless Infeasible
  std::vector<TraceEntry> trace;
  double wall_time_s = 0.0;
  std::int64_t evaluations = 0;  // complete candidates scored
  std::string diagnostic;        // why an Infeasible verdict was reached

  // Myopic solves that fail mid-horizon keep the steps they completed so the
  // battery trajectory up to the failure stays reportable.
  std::optional<int> infeasible_step;
  std::optional<problem::Assignment> partial_assignment;
  int steps_completed = 0;
};

struct ExhaustiveConfig {
  double candidate_ceiling = 1e8;  // reject larger search spaces
};

enum class InitPolicy { BestRate, RoundRobin, Seeded };

struct IterativeConfig {
  double epsilon = 1e-4;  // stop when |F_u - F_{u-1}| falls below this
  int u_max = 50;
  InitPolicy x_init = InitPolicy::BestRate;
  std::uint64_t seed = 0;  // used by InitPolicy::Seeded
};

enum class Rounding {
  Floor,            // keep the per-row argmax as is
  NearestFeasible,  // argmax, then greedy repair if constraints broke
};

struct OneShotConfig {
  double epsilon_pair = 1e-2;   // bound on pairwise products of relaxed vars
  double step_tolerance = 1e-6; // stop a descent round on steps this small
  int max_iterations = 400;     // gradient steps per penalty round
  Rounding rounding = Rounding::NearestFeasible;
};

// Full enumeration of every assignment; returns the feasible minimizer
// (status Optimal) or Infeasible. Ties break toward the lexicographically
// smallest (oru, option) tables. Throws std::invalid_argument when the
// search space exceeds the configured ceiling, naming the estimated size.
SolveOutcome solve_exhaustive(const model::Scenario& s, double alpha,
                              const ExhaustiveConfig& config = {});

// Solves each step exactly in isolation, carrying remaining battery
// forward. Greedy in time: a horizon-feasible instance can still deplete
// the battery mid-horizon and come back Infeasible at that step.
SolveOutcome solve_exhaustive_myopic(const model::Scenario& s, double alpha,
                                     const ExhaustiveConfig& config = {});

// Alternating minimization: fixes the association and picks ciphers, then
// fixes ciphers and re-solves the association as a capacitated min-cost
// matching, until the objective settles or u_max is hit.
SolveOutcome solve_iterative(const model::Scenario& s, double alpha,
                             const IterativeConfig& config = {});

// Continuous relaxation under an exponential variable transform, driven by
// a penalty-weighted projected gradient descent, then discretized per the
// configured rounding.
SolveOutcome solve_oneshot(const model::Scenario& s, double alpha,
                           const OneShotConfig& config = {});

// Deterministic greedy repair toward feasibility: cipher bumps for security
// and cycle-budget conflicts, capacity moves by smallest objective regret,
// then cipher downgrades for battery. Returns nullopt when unrepairable.
std::optional<problem::Assignment> repair(const problem::Assignment& a,
                                          const model::Scenario& s,
                                          double alpha);

}  // namespace oranopt::solvers
