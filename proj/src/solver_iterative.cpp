#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "oranopt/min_cost_assignment.hpp"
#include "oranopt/rng.hpp"
#include "oranopt/solvers.hpp"
#include "solver_tables.hpp"

namespace oranopt::solvers {

namespace {

using Clock = std::chrono::steady_clock;
using detail::CellTables;

constexpr std::uint64_t kInitDrawKind = 0x49;

problem::Assignment assemble(const Grid2<int>& oru_of, const Grid2<int>& option_of) {
  return problem::Assignment{oru_of, option_of};
}

// Cipher block: with the association fixed, pick per-cell options under the
// security requirement and cycle budget, splitting each device's battery
// greedily across steps in decreasing payload order. Every unprocessed step
// keeps a reservation of its cheapest admissible option, so a device that
// can afford its cheapest schedule never strands a later step.
std::optional<Grid2<int>> solve_cipher_block(const model::Scenario& s,
                                             const CellTables& tb,
                                             const Grid2<int>& oru_of,
                                             std::string* diagnostic) {
  Grid2<int> option_of(s.n_ues(), s.horizon(), 0);
  for (int i = 0; i < s.n_ues(); ++i) {
    std::vector<double> min_energy(s.horizon());
    for (int t = 0; t < s.horizon(); ++t) {
      const int j = oru_of(i, t);
      double best = -1.0;
      for (int g = 0; g < tb.n_options; ++g) {
        if (!tb.ok(i, t, j, g)) continue;
        const double e = tb.energy_j(i, t, j, g);
        if (best < 0.0 || e < best) best = e;
      }
      if (best < 0.0) {
        *diagnostic = "no admissible cipher for ue " + std::to_string(i) +
                      " at step " + std::to_string(t) + " on oru " +
                      std::to_string(j);
        return std::nullopt;
      }
      min_energy[t] = best;
    }
    const double floor_energy =
        std::accumulate(min_energy.begin(), min_energy.end(), 0.0);
    if (!problem::energy_within_budget(floor_energy, s.ue(i).battery_joules)) {
      *diagnostic = "ue " + std::to_string(i) +
                    " cannot afford even its cheapest ciphers under the "
                    "current association";
      return std::nullopt;
    }

    std::vector<int> order(s.horizon());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return s.ue(i).payload_bits[a] > s.ue(i).payload_bits[b];
    });

    double remaining = s.ue(i).battery_joules;
    double reserve = floor_energy;
    for (const int t : order) {
      reserve -= min_energy[t];
      const int j = oru_of(i, t);
      int best_g = -1;
      double best_obj = 0.0;
      for (int g = 0; g < tb.n_options; ++g) {
        if (!tb.ok(i, t, j, g)) continue;
        const double e = tb.energy_j(i, t, j, g);
        if (!problem::energy_within_budget(e + reserve, remaining)) continue;
        const double obj = tb.obj(i, t, j, g);
        if (best_g < 0 || obj < best_obj) {
          best_g = g;
          best_obj = obj;
        }
      }
      // The cheapest option always fits thanks to the reservation.
      option_of(i, t) = best_g;
      remaining -= tb.energy_j(i, t, j, best_g);
    }
  }
  return option_of;
}

bool cipher_block_feasible(const model::Scenario& s, const CellTables& tb,
                           const Grid2<int>& oru_of,
                           const Grid2<int>& option_of) {
  for (int i = 0; i < s.n_ues(); ++i) {
    double energy = 0.0;
    for (int t = 0; t < s.horizon(); ++t) {
      if (!tb.ok(i, t, oru_of(i, t), option_of(i, t))) return false;
      energy += tb.energy_j(i, t, oru_of(i, t), option_of(i, t));
    }
    if (!problem::energy_within_budget(energy, s.ue(i).battery_joules)) {
      return false;
    }
  }
  return true;
}

// Association block: with ciphers fixed, solve each step exactly as a
// min-cost matching of devices into per-radio-unit capacity slots.
std::optional<Grid2<int>> solve_assoc_block(const model::Scenario& s,
                                            const CellTables& tb,
                                            const Grid2<int>& option_of,
                                            std::string* diagnostic) {
  Grid2<int> oru_of(s.n_ues(), s.horizon(), 0);
  for (int t = 0; t < s.horizon(); ++t) {
    std::vector<int> slot_oru;
    for (int j = 0; j < s.n_orus(); ++j) {
      const int slots = std::min(s.oru(j).resource_blocks, s.n_ues());
      slot_oru.insert(slot_oru.end(), slots, j);
    }
    Grid2<double> cost(s.n_ues(), static_cast<int>(slot_oru.size()),
                       kForbiddenCost);
    for (int i = 0; i < s.n_ues(); ++i) {
      for (int col = 0; col < static_cast<int>(slot_oru.size()); ++col) {
        const int j = slot_oru[col];
        const int g = option_of(i, t);
        if (tb.ok(i, t, j, g)) cost(i, col) = tb.obj(i, t, j, g);
      }
    }
    const auto match = min_cost_assignment(cost);
    if (!match) {
      *diagnostic =
          "no capacity-feasible association at step " + std::to_string(t);
      return std::nullopt;
    }
    for (int i = 0; i < s.n_ues(); ++i) {
      oru_of(i, t) = slot_oru[(*match)[i]];
    }
  }
  return oru_of;
}

bool battery_feasible(const model::Scenario& s, const CellTables& tb,
                      const Grid2<int>& oru_of, const Grid2<int>& option_of) {
  for (int i = 0; i < s.n_ues(); ++i) {
    double energy = 0.0;
    for (int t = 0; t < s.horizon(); ++t) {
      energy += tb.energy_j(i, t, oru_of(i, t), option_of(i, t));
    }
    if (!problem::energy_within_budget(energy, s.ue(i).battery_joules)) {
      return false;
    }
  }
  return true;
}

// Initial association. Every policy restricts itself to radio units the
// device can serve at all (some cipher passes both the security requirement
// and the cycle budget); a device with no such radio unit makes the whole
// instance infeasible.
std::optional<Grid2<int>> initial_association(const model::Scenario& s,
                                              const CellTables& tb,
                                              const IterativeConfig& config,
                                              std::string* diagnostic) {
  Grid2<int> oru_of(s.n_ues(), s.horizon(), 0);
  for (int i = 0; i < s.n_ues(); ++i) {
    for (int t = 0; t < s.horizon(); ++t) {
      int pick = -1;
      switch (config.x_init) {
        case InitPolicy::BestRate: {
          double best_rate = 0.0;
          for (int j = 0; j < s.n_orus(); ++j) {
            if (!tb.any_option(i, t, j)) continue;
            if (pick < 0 || s.rate_bps(i, j, t) > best_rate) {
              pick = j;
              best_rate = s.rate_bps(i, j, t);
            }
          }
          break;
        }
        case InitPolicy::RoundRobin:
        case InitPolicy::Seeded: {
          int start;
          if (config.x_init == InitPolicy::RoundRobin) {
            start = (i + t) % s.n_orus();
          } else {
            start = static_cast<int>(
                rng::uniform01(config.seed, kInitDrawKind, i, t) * s.n_orus());
            start = std::min(start, s.n_orus() - 1);
          }
          for (int off = 0; off < s.n_orus(); ++off) {
            const int j = (start + off) % s.n_orus();
            if (tb.any_option(i, t, j)) {
              pick = j;
              break;
            }
          }
          break;
        }
      }
      if (pick < 0) {
        *diagnostic = "ue " + std::to_string(i) + " at step " +
                      std::to_string(t) +
                      " has no radio unit it can satisfy";
        return std::nullopt;
      }
      oru_of(i, t) = pick;
    }
  }
  return oru_of;
}

}  // namespace

SolveOutcome solve_iterative(const model::Scenario& s, double alpha,
                             const IterativeConfig& config) {
  if (!(config.epsilon > 0.0)) {
    throw std::invalid_argument("iterative epsilon must be positive");
  }
  if (config.u_max < 1) {
    throw std::invalid_argument("iterative u_max must be >= 1");
  }

  const auto start = Clock::now();
  SolveOutcome out;
  const CellTables tb = detail::build_cell_tables(s, alpha);

  std::string diag;
  bool failed = false;
  Grid2<int> x;
  Grid2<int> ciphers;

  if (auto x_opt = initial_association(s, tb, config, &diag)) {
    x = std::move(*x_opt);
  } else {
    failed = true;
  }

  bool have_prev = false;
  double f_prev = 0.0;
  bool converged = false;

  for (int u = 1; !failed && u <= config.u_max; ++u) {
    // Cipher block. Keep the previous ciphers when they are still feasible
    // under the current association and score better than the fresh greedy
    // pick; that keeps the objective trace nonincreasing.
    auto a_opt = solve_cipher_block(s, tb, x, &diag);
    if (!a_opt) {
      failed = true;
      break;
    }
    Grid2<int> a_new = std::move(*a_opt);
    ++out.evaluations;
    if (have_prev && cipher_block_feasible(s, tb, x, ciphers)) {
      const double fresh =
          problem::objective(assemble(x, a_new), s, alpha).total;
      const double kept =
          problem::objective(assemble(x, ciphers), s, alpha).total;
      ++out.evaluations;
      if (kept < fresh) a_new = ciphers;
    }

    // Association block.
    auto x_opt2 = solve_assoc_block(s, tb, a_new, &diag);
    if (!x_opt2) {
      failed = true;
      break;
    }
    Grid2<int> x_new = std::move(*x_opt2);

    // The matching ignores the horizon battery; fall back to the previous
    // feasible association when the fresh one overdraws it. On the first
    // iteration there is no feasible fallback yet, so try a repair.
    if (!battery_feasible(s, tb, x_new, a_new)) {
      if (have_prev) {
        x_new = x;
      } else {
        const auto repaired = repair(assemble(x_new, a_new), s, alpha);
        if (!repaired) {
          diag = "initial iterate overdraws a battery and cannot be repaired";
          failed = true;
          break;
        }
        x_new = repaired->oru_of;
        a_new = repaired->option_of;
      }
    }

    const double f_u = problem::objective(assemble(x_new, a_new), s, alpha).total;
    ++out.evaluations;
    out.trace.push_back({u, f_u, "A+x"});
    x = std::move(x_new);
    ciphers = std::move(a_new);

    if (have_prev && std::abs(f_u - f_prev) < config.epsilon) {
      converged = true;
      f_prev = f_u;
      break;
    }
    f_prev = f_u;
    have_prev = true;
  }

  if (failed) {
    out.status = SolveStatus::Infeasible;
    out.diagnostic = diag;
  } else {
    out.status = converged ? SolveStatus::Feasible : SolveStatus::IterationLimit;
    out.assignment = assemble(x, ciphers);
    if (!problem::check(*out.assignment, s).empty()) {
      throw std::logic_error("iterative solver produced an infeasible iterate");
    }
    out.report = problem::objective(*out.assignment, s, alpha);
  }
  out.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

}  // namespace oranopt::solvers
