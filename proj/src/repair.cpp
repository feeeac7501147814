#include <cmath>
#include <string>
#include <vector>

#include "oranopt/solvers.hpp"
#include "solver_tables.hpp"

namespace oranopt::solvers {

namespace {

using detail::CellTables;

// Clamps a cipher into the window that satisfies the radio unit's security
// requirement (push up) and the device's cycle budget (push down).
// Returns -1 when the two demands conflict.
int fit_option(const model::Scenario& s, int i, int j, int g) {
  const auto& catalog = s.catalog();
  const int top = static_cast<int>(catalog.size()) - 1;
  const double w = s.oru(j).security_requirement_bits;
  const double budget = s.ue(i).compute_budget_cycles;
  while (g < top && catalog[g].security_bits < w) ++g;
  while (g > 0 && static_cast<double>(catalog[g].enc_cycles_per_block) > budget) --g;
  if (catalog[g].security_bits < w ||
      static_cast<double>(catalog[g].enc_cycles_per_block) > budget) {
    return -1;
  }
  return g;
}

double ue_energy(const CellTables& tb, const problem::Assignment& a, int i) {
  double e = 0.0;
  for (int t = 0; t < tb.horizon; ++t) {
    e += tb.energy_j(i, t, a.oru_of(i, t), a.option_of(i, t));
  }
  return e;
}

}  // namespace

std::optional<problem::Assignment> repair(const problem::Assignment& a,
                                          const model::Scenario& s,
                                          double alpha) {
  const CellTables tb = detail::build_cell_tables(s, alpha);
  problem::Assignment r = a;

  // Stage 1: per-cell cipher window.
  for (int i = 0; i < s.n_ues(); ++i) {
    for (int t = 0; t < s.horizon(); ++t) {
      const int g = fit_option(s, i, r.oru_of(i, t), r.option_of(i, t));
      if (g < 0) return std::nullopt;
      r.option_of(i, t) = g;
    }
  }

  // Stage 2: resolve over-capacity one move at a time, always relocating
  // the (device, target) pair with the smallest objective regret.
  while (true) {
    Grid2<int> occupancy(s.n_orus(), s.horizon(), 0);
    for (int i = 0; i < s.n_ues(); ++i) {
      for (int t = 0; t < s.horizon(); ++t) {
        ++occupancy(r.oru_of(i, t), t);
      }
    }
    int over_j = -1, over_t = -1;
    for (int t = 0; t < s.horizon() && over_j < 0; ++t) {
      for (int j = 0; j < s.n_orus(); ++j) {
        if (occupancy(j, t) > s.oru(j).resource_blocks) {
          over_j = j;
          over_t = t;
          break;
        }
      }
    }
    if (over_j < 0) break;

    int best_i = -1, best_j = -1, best_g = -1;
    double best_regret = 0.0;
    for (int i = 0; i < s.n_ues(); ++i) {
      if (r.oru_of(i, over_t) != over_j) continue;
      const double cur = tb.obj(i, over_t, over_j, r.option_of(i, over_t));
      for (int j2 = 0; j2 < s.n_orus(); ++j2) {
        if (j2 == over_j) continue;
        if (occupancy(j2, over_t) >= s.oru(j2).resource_blocks) continue;
        const int g2 = fit_option(s, i, j2, r.option_of(i, over_t));
        if (g2 < 0) continue;
        const double regret = tb.obj(i, over_t, j2, g2) - cur;
        if (best_i < 0 || regret < best_regret) {
          best_i = i;
          best_j = j2;
          best_g = g2;
          best_regret = regret;
        }
      }
    }
    if (best_i < 0) return std::nullopt;
    r.oru_of(best_i, over_t) = best_j;
    r.option_of(best_i, over_t) = best_g;
  }

  // Stage 3: while a battery is overdrawn, downgrade that device's most
  // energy-hungry step as far as the security requirement permits. Each
  // pass lowers one option, so the loop is bounded.
  const int max_downgrades = (tb.n_options - 1) * s.n_ues() * s.horizon() + 1;
  for (int round = 0; round < max_downgrades; ++round) {
    int over_ue = -1;
    for (int i = 0; i < s.n_ues(); ++i) {
      if (!problem::energy_within_budget(ue_energy(tb, r, i),
                                         s.ue(i).battery_joules)) {
        over_ue = i;
        break;
      }
    }
    if (over_ue < 0) break;

    int best_t = -1;
    double best_energy = 0.0;
    for (int t = 0; t < s.horizon(); ++t) {
      const int g = r.option_of(over_ue, t);
      if (g == 0) continue;
      if (!tb.ok(over_ue, t, r.oru_of(over_ue, t), g - 1)) continue;
      const double e = tb.energy_j(over_ue, t, r.oru_of(over_ue, t), g);
      if (best_t < 0 || e > best_energy) {
        best_t = t;
        best_energy = e;
      }
    }
    if (best_t < 0) return std::nullopt;
    --r.option_of(over_ue, best_t);
  }

  if (!problem::check(r, s).empty()) return std::nullopt;
  return r;
}

}  // namespace oranopt::solvers
