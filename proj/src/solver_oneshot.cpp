#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "oranopt/solvers.hpp"
#include "relaxed_problem.hpp"

namespace oranopt::solvers {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kLogFloor = -40.0;

void project(std::vector<double>& z) {
  for (double& v : z) v = std::clamp(v, kLogFloor, 0.0);
}

}  // namespace

SolveOutcome solve_oneshot(const model::Scenario& s, double alpha,
                           const OneShotConfig& config) {
  if (!(config.epsilon_pair > 0.0)) {
    throw std::invalid_argument("epsilon_pair must be positive");
  }
  if (!(config.step_tolerance > 0.0)) {
    throw std::invalid_argument("step_tolerance must be positive");
  }
  if (config.max_iterations < 1) {
    throw std::invalid_argument("max_iterations must be >= 1");
  }

  const auto start = Clock::now();
  SolveOutcome out;
  detail::RelaxedProblem rp(s, alpha, config.epsilon_pair);

  const int n = rp.n_vars();
  std::vector<double> z(n);
  for (int i = 0; i < s.n_ues(); ++i) {
    for (int t = 0; t < s.horizon(); ++t) {
      for (int j = 0; j < s.n_orus(); ++j) {
        z[rp.x_var(i, t, j)] = -std::log(static_cast<double>(s.n_orus()));
      }
      for (int g = 0; g < static_cast<int>(s.catalog().size()); ++g) {
        z[rp.a_var(i, t, g)] = -std::log(static_cast<double>(s.catalog().size()));
      }
    }
  }

  // Penalty weight ladder: start soft so the objective shapes the iterate,
  // finish stiff so the one-choice caps force near-binary mass.
  std::vector<double> grad;
  double eta = 1.0;
  bool diverged = false;
  for (int round = 0; round < 7 && !diverged; ++round) {
    const double mu = std::pow(10.0, round);
    for (int iter = 0; iter < config.max_iterations; ++iter) {
      const double p = rp.eval(z, mu, &grad);
      ++out.evaluations;
      if (!std::isfinite(p)) {
        diverged = true;
        break;
      }
      double gnorm = 0.0;
      for (double g : grad) gnorm += g * g;
      if (gnorm == 0.0) break;

      // Backtracking line search on the projected step.
      double step = std::min(eta * 2.0, 1e3);
      bool accepted = false;
      std::vector<double> z_try;
      for (int bt = 0; bt < 60; ++bt) {
        z_try = z;
        for (int k = 0; k < n; ++k) z_try[k] -= step * grad[k];
        project(z_try);
        const double p_try = rp.eval(z_try, mu, nullptr);
        ++out.evaluations;
        double dot = 0.0;
        for (int k = 0; k < n; ++k) dot += grad[k] * (z[k] - z_try[k]);
        if (std::isfinite(p_try) && p_try <= p - 1e-4 * dot) {
          accepted = true;
          break;
        }
        step *= 0.5;
        if (step < 1e-14) break;
      }
      if (!accepted) break;

      double max_move = 0.0;
      for (int k = 0; k < n; ++k) {
        max_move = std::max(max_move, std::abs(z_try[k] - z[k]));
      }
      z.swap(z_try);
      eta = step;
      if (max_move < config.step_tolerance) break;
    }
    const double f = rp.relaxed_objective(z);
    if (!std::isfinite(f)) {
      diverged = true;
      break;
    }
    out.trace.push_back({round, f, "penalty-round"});
  }

  if (diverged) {
    out.status = SolveStatus::Infeasible;
    out.diagnostic = "relaxed descent diverged to a non-finite value";
    out.wall_time_s =
        std::chrono::duration<double>(Clock::now() - start).count();
    return out;
  }

  // Discretize: per-row argmax, optionally followed by greedy repair.
  problem::Assignment rounded = rp.round_argmax(
      z, config.rounding == Rounding::NearestFeasible);
  if (problem::check(rounded, s).empty()) {
    out.status = SolveStatus::Feasible;
    out.assignment = std::move(rounded);
    out.report = problem::objective(*out.assignment, s, alpha);
  } else if (config.rounding == Rounding::NearestFeasible) {
    auto repaired = repair(rounded, s, alpha);
    if (repaired) {
      out.status = SolveStatus::Feasible;
      out.assignment = std::move(*repaired);
      out.report = problem::objective(*out.assignment, s, alpha);
    } else {
      out.status = SolveStatus::Infeasible;
      out.diagnostic = "rounded relaxation is infeasible and unrepairable";
    }
  } else {
    out.status = SolveStatus::Infeasible;
    out.diagnostic = "rounded relaxation violates constraints (Floor rounding)";
  }
  out.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

}  // namespace oranopt::solvers
