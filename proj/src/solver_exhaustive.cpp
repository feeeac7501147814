#include <chrono>
#include <cmath>
#include <cfloat>
#include <stdexcept>
#include <string>

#include "oranopt/solvers.hpp"
#include "solver_tables.hpp"

namespace oranopt::solvers {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::IterationLimit: return "iteration_limit";
  }
  return "?";
}

bool has_solution(SolveStatus status) {
  return status == SolveStatus::Optimal || status == SolveStatus::Feasible ||
         status == SolveStatus::IterationLimit;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Choice {
  int j = 0;
  int g = 0;
  double obj = 0.0;
  double energy = 0.0;
};

// Incremental odometer over the per-cell admissible (oru, option) choices.
// Cells are ordered ue-major, step-minor; objective prefix sums and the
// capacity / battery counters are patched per digit change, so advancing
// the odometer costs O(horizon) instead of a full re-evaluation.
class Enumerator {
 public:
  Enumerator(const model::Scenario& s, const detail::CellTables& tables)
      : s_(s), tb_(tables), n_cells_(s.n_ues() * s.horizon()) {
    choices_.resize(n_cells_);
    for (int i = 0; i < s.n_ues(); ++i) {
      for (int t = 0; t < s.horizon(); ++t) {
        auto& list = choices_[cell_of(i, t)];
        for (int j = 0; j < s.n_orus(); ++j) {
          for (int g = 0; g < tb_.n_options; ++g) {
            if (tb_.ok(i, t, j, g)) {
              list.push_back({j, g, tb_.obj(i, t, j, g), tb_.energy_j(i, t, j, g)});
            }
          }
        }
      }
    }
  }

  // The (ue, step) of the first cell with no admissible choice, if any.
  std::optional<std::pair<int, int>> blocked_cell() const {
    for (int c = 0; c < n_cells_; ++c) {
      if (choices_[c].empty()) return std::make_pair(c / s_.horizon(), c % s_.horizon());
    }
    return std::nullopt;
  }

  // Enumerates every candidate; returns the lexicographically smallest
  // feasible minimizer's digits, or nullopt.
  std::optional<std::vector<int>> run(std::int64_t* evaluations) {
    digits_.assign(n_cells_, 0);
    occupancy_ = Grid2<int>(s_.n_orus(), s_.horizon(), 0);
    over_capacity_ = 0;
    ue_energy_.assign(s_.n_ues(), 0.0);
    ue_over_.assign(s_.n_ues(), 0);
    over_budget_ = 0;
    prefix_.assign(n_cells_ + 1, 0.0);

    for (int c = 0; c < n_cells_; ++c) place(c, 0);
    rebuild_prefix(0);

    bool found = false;
    double best_total = 0.0;
    std::vector<int> best;

    while (true) {
      if (over_capacity_ == 0 && over_budget_ == 0) {
        ++*evaluations;
        const double total = prefix_[n_cells_];
        if (!found || total < best_total ||
            (total == best_total && lex_less(digits_, best))) {
          found = true;
          best_total = total;
          best = digits_;
        }
      }
      int c = n_cells_ - 1;
      while (c >= 0 && digits_[c] + 1 == static_cast<int>(choices_[c].size())) --c;
      if (c < 0) break;
      replace(c, digits_[c] + 1);
      for (int cc = c + 1; cc < n_cells_; ++cc) replace(cc, 0);
      rebuild_prefix(c);
    }

    if (!found) return std::nullopt;
    return best;
  }

  problem::Assignment to_assignment(const std::vector<int>& digits) const {
    problem::Assignment a;
    a.oru_of = Grid2<int>(s_.n_ues(), s_.horizon());
    a.option_of = Grid2<int>(s_.n_ues(), s_.horizon());
    for (int i = 0; i < s_.n_ues(); ++i) {
      for (int t = 0; t < s_.horizon(); ++t) {
        const Choice& ch = choices_[cell_of(i, t)][digits[cell_of(i, t)]];
        a.oru_of(i, t) = ch.j;
        a.option_of(i, t) = ch.g;
      }
    }
    return a;
  }

 private:
  int cell_of(int i, int t) const { return i * s_.horizon() + t; }

  // Installs choice index `idx` at cell `c`, assuming no previous choice is
  // recorded there (initial placement).
  void place(int c, int idx) {
    digits_[c] = idx;
    const int i = c / s_.horizon();
    const int t = c % s_.horizon();
    bump_occupancy(choices_[c][idx].j, t, +1);
    refresh_energy(i);
  }

  // Swaps the choice at cell `c`, patching the counters.
  void replace(int c, int idx) {
    const int i = c / s_.horizon();
    const int t = c % s_.horizon();
    const int j_old = choices_[c][digits_[c]].j;
    const int j_new = choices_[c][idx].j;
    digits_[c] = idx;
    if (j_old != j_new) {
      bump_occupancy(j_old, t, -1);
      bump_occupancy(j_new, t, +1);
    }
    refresh_energy(i);
  }

  void bump_occupancy(int j, int t, int delta) {
    const int cap = s_.oru(j).resource_blocks;
    const bool was_over = occupancy_(j, t) > cap;
    occupancy_(j, t) += delta;
    const bool is_over = occupancy_(j, t) > cap;
    if (was_over != is_over) over_capacity_ += is_over ? 1 : -1;
  }

  // Re-sums the device's horizon energy from scratch; summing fresh per
  // change keeps the float total identical to the feasibility check's.
  void refresh_energy(int i) {
    double e = 0.0;
    for (int t = 0; t < s_.horizon(); ++t) {
      const int c = cell_of(i, t);
      e += choices_[c][digits_[c]].energy;
    }
    ue_energy_[i] = e;
    const bool over = !problem::energy_within_budget(e, s_.ue(i).battery_joules);
    if (over != (ue_over_[i] != 0)) over_budget_ += over ? 1 : -1;
    ue_over_[i] = over ? 1 : 0;
  }

  void rebuild_prefix(int from) {
    for (int c = from; c < n_cells_; ++c) {
      prefix_[c + 1] = prefix_[c] + choices_[c][digits_[c]].obj;
    }
  }

  // Ties break on the flattened oru table first, then the option table.
  bool lex_less(const std::vector<int>& a, const std::vector<int>& b) const {
    for (int c = 0; c < n_cells_; ++c) {
      const int ja = choices_[c][a[c]].j;
      const int jb = choices_[c][b[c]].j;
      if (ja != jb) return ja < jb;
    }
    for (int c = 0; c < n_cells_; ++c) {
      const int ga = choices_[c][a[c]].g;
      const int gb = choices_[c][b[c]].g;
      if (ga != gb) return ga < gb;
    }
    return false;
  }

  const model::Scenario& s_;
  const detail::CellTables& tb_;
  int n_cells_ = 0;
  std::vector<std::vector<Choice>> choices_;
  std::vector<int> digits_;
  Grid2<int> occupancy_;
  int over_capacity_ = 0;
  std::vector<double> ue_energy_;
  std::vector<char> ue_over_;
  int over_budget_ = 0;
  std::vector<double> prefix_;
};

void require_within_ceiling(const model::Scenario& s, double ceiling) {
  const double cells = static_cast<double>(s.n_ues()) * s.horizon();
  const double space =
      std::pow(static_cast<double>(s.n_orus()), cells) *
      std::pow(static_cast<double>(s.catalog().size()), cells);
  if (!(space <= ceiling)) {
    throw std::invalid_argument(
        "exhaustive search space of about " + std::to_string(space) +
        " candidates exceeds the ceiling of " + std::to_string(ceiling));
  }
}

// A one-step view of the scenario at step `t` with per-device battery
// budgets replaced by what is still available.
model::Scenario slice_step(const model::Scenario& s, int t,
                           const std::vector<double>& remaining) {
  std::vector<model::UserEquipment> ues = s.ues();
  for (int i = 0; i < s.n_ues(); ++i) {
    ues[i].payload_bits = {s.ue(i).payload_bits[t]};
    // An exhausted battery still admits zero-energy steps.
    ues[i].battery_joules = std::max(remaining[i], DBL_MIN);
  }
  Grid3<double> rates(s.n_ues(), s.n_orus(), 1);
  for (int i = 0; i < s.n_ues(); ++i) {
    for (int j = 0; j < s.n_orus(); ++j) {
      rates(i, j, 0) = s.rate_bps(i, j, t);
    }
  }
  return model::Scenario(std::move(ues), s.orus(), 1, std::move(rates),
                         s.e_cp_watts(), s.e_comm_watts(), s.cycle_costs());
}

}  // namespace

SolveOutcome solve_exhaustive(const model::Scenario& s, double alpha,
                              const ExhaustiveConfig& config) {
  const auto start = Clock::now();
  require_within_ceiling(s, config.candidate_ceiling);

  SolveOutcome out;
  const auto tables = detail::build_cell_tables(s, alpha);
  Enumerator en(s, tables);

  if (auto blocked = en.blocked_cell()) {
    out.status = SolveStatus::Infeasible;
    out.diagnostic = "no admissible (oru, option) choice for ue " +
                     std::to_string(blocked->first) + " at step " +
                     std::to_string(blocked->second);
    out.wall_time_s = seconds_since(start);
    return out;
  }

  const auto best = en.run(&out.evaluations);
  if (!best) {
    out.status = SolveStatus::Infeasible;
    out.diagnostic = "no feasible assignment in the search space";
    out.wall_time_s = seconds_since(start);
    return out;
  }

  out.status = SolveStatus::Optimal;
  out.assignment = en.to_assignment(*best);
  if (!problem::check(*out.assignment, s).empty()) {
    throw std::logic_error("exhaustive search produced an infeasible winner");
  }
  out.report = problem::objective(*out.assignment, s, alpha);
  out.wall_time_s = seconds_since(start);
  return out;
}

SolveOutcome solve_exhaustive_myopic(const model::Scenario& s, double alpha,
                                     const ExhaustiveConfig& config) {
  const auto start = Clock::now();

  SolveOutcome out;
  std::vector<double> remaining(s.n_ues());
  for (int i = 0; i < s.n_ues(); ++i) remaining[i] = s.ue(i).battery_joules;

  problem::Assignment full;
  full.oru_of = Grid2<int>(s.n_ues(), s.horizon(), 0);
  full.option_of = Grid2<int>(s.n_ues(), s.horizon(), 0);

  for (int t = 0; t < s.horizon(); ++t) {
    const model::Scenario slice = slice_step(s, t, remaining);
    const SolveOutcome step = solve_exhaustive(slice, alpha, config);
    out.evaluations += step.evaluations;

    if (step.status != SolveStatus::Optimal) {
      out.status = SolveStatus::Infeasible;
      out.infeasible_step = t;
      out.steps_completed = t;
      out.diagnostic = "step " + std::to_string(t) +
                       " infeasible with the remaining battery: " + step.diagnostic;
      if (t > 0) {
        problem::Assignment partial;
        partial.oru_of = Grid2<int>(s.n_ues(), t, 0);
        partial.option_of = Grid2<int>(s.n_ues(), t, 0);
        for (int i = 0; i < s.n_ues(); ++i) {
          for (int tt = 0; tt < t; ++tt) {
            partial.oru_of(i, tt) = full.oru_of(i, tt);
            partial.option_of(i, tt) = full.option_of(i, tt);
          }
        }
        out.partial_assignment = std::move(partial);
      }
      out.wall_time_s = seconds_since(start);
      return out;
    }

    for (int i = 0; i < s.n_ues(); ++i) {
      const int j = step.assignment->oru_of(i, 0);
      const int g = step.assignment->option_of(i, 0);
      full.oru_of(i, t) = j;
      full.option_of(i, t) = g;
      remaining[i] -= model::step_energy(s, i, j, g, t).total();
    }
    out.trace.push_back({t, step.report->total, "step"});
    out.steps_completed = t + 1;
  }

  // A single step is the exact problem; longer horizons are only
  // per-step optimal.
  out.status = s.horizon() == 1 ? SolveStatus::Optimal : SolveStatus::Feasible;
  out.assignment = std::move(full);
  if (!problem::check(*out.assignment, s).empty()) {
    throw std::logic_error("myopic search produced an infeasible schedule");
  }
  out.report = problem::objective(*out.assignment, s, alpha);
  out.wall_time_s = seconds_since(start);
  return out;
}

}  // namespace oranopt::solvers
