#include "oranopt/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace oranopt::problem {

namespace {

void check_dims(const Assignment& a, const model::Scenario& s) {
  if (a.oru_of.rows() != s.n_ues() || a.oru_of.cols() != s.horizon() ||
      a.option_of.rows() != s.n_ues() || a.option_of.cols() != s.horizon()) {
    throw std::invalid_argument("assignment dimensions do not match the scenario");
  }
  for (int i = 0; i < s.n_ues(); ++i) {
    for (int t = 0; t < s.horizon(); ++t) {
      if (a.oru_of(i, t) < 0 || a.oru_of(i, t) >= s.n_orus()) {
        throw std::invalid_argument("assignment oru index out of range");
      }
      if (a.option_of(i, t) < 0 ||
          a.option_of(i, t) >= static_cast<int>(s.catalog().size())) {
        throw std::invalid_argument("assignment option index out of range");
      }
    }
  }
}

}  // namespace

Assignment uniform_assignment(int n_ues, int horizon, int oru, int option) {
  Assignment a;
  a.oru_of = Grid2<int>(n_ues, horizon, oru);
  a.option_of = Grid2<int>(n_ues, horizon, option);
  return a;
}

const char* to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::SecurityRequirement: return "security_requirement";
    case ConstraintKind::ResourceBlocks: return "resource_blocks";
    case ConstraintKind::ComputeBudget: return "compute_budget";
    case ConstraintKind::Battery: return "battery";
  }
  return "?";
}

bool energy_within_budget(double energy_joules, double budget_joules) {
  const double tol =
      1e-9 * std::max(std::abs(budget_joules), std::abs(energy_joules));
  return energy_joules <= budget_joules + tol;
}

std::vector<ConstraintViolation> check(const Assignment& a,
                                       const model::Scenario& s) {
  check_dims(a, s);
  std::vector<ConstraintViolation> out;

  // Security requirement of the chosen radio unit, per (ue, step).
  for (int i = 0; i < s.n_ues(); ++i) {
    for (int t = 0; t < s.horizon(); ++t) {
      const int j = a.oru_of(i, t);
      const double sec = s.catalog()[a.option_of(i, t)].security_bits;
      const double slack = sec - s.oru(j).security_requirement_bits;
      if (slack < 0.0) {
        out.push_back({ConstraintKind::SecurityRequirement, i, t, slack});
      }
    }
  }

  // Resource-block capacity, per (oru, step).
  for (int t = 0; t < s.horizon(); ++t) {
    for (int j = 0; j < s.n_orus(); ++j) {
      int count = 0;
      for (int i = 0; i < s.n_ues(); ++i) {
        if (a.oru_of(i, t) == j) ++count;
      }
      const int slack = s.oru(j).resource_blocks - count;
      if (slack < 0) {
        out.push_back({ConstraintKind::ResourceBlocks, j, t,
                       static_cast<double>(slack)});
      }
    }
  }

  // Per-block cycle budget of the device, per (ue, step).
  for (int i = 0; i < s.n_ues(); ++i) {
    for (int t = 0; t < s.horizon(); ++t) {
      const auto cycles = s.catalog()[a.option_of(i, t)].enc_cycles_per_block;
      const double slack =
          s.ue(i).compute_budget_cycles - static_cast<double>(cycles);
      if (slack < 0.0) {
        out.push_back({ConstraintKind::ComputeBudget, i, t, slack});
      }
    }
  }

  // Battery over the whole horizon, per ue. Summed in step order so the
  // total matches what step-by-step solvers accumulate.
  for (int i = 0; i < s.n_ues(); ++i) {
    double energy = 0.0;
    for (int t = 0; t < s.horizon(); ++t) {
      energy += step_energy(s, i, a.oru_of(i, t), a.option_of(i, t), t).total();
    }
    if (!energy_within_budget(energy, s.ue(i).battery_joules)) {
      out.push_back({ConstraintKind::Battery, i, kWholeHorizon,
                     s.ue(i).battery_joules - energy});
    }
  }

  return out;
}

double ObjectiveReport::mean_norm_security() const {
  if (per_ue_step.size() == 0) return 0.0;
  double sum = 0.0;
  for (const auto& c : per_ue_step.data()) sum += c.norm_security;
  return sum / static_cast<double>(per_ue_step.size());
}

double ObjectiveReport::mean_norm_latency() const {
  if (per_ue_step.size() == 0) return 0.0;
  double sum = 0.0;
  for (const auto& c : per_ue_step.data()) sum += c.norm_latency;
  return sum / static_cast<double>(per_ue_step.size());
}

double ObjectiveReport::mean_security_bits() const {
  if (per_ue_step.size() == 0) return 0.0;
  double sum = 0.0;
  for (const auto& c : per_ue_step.data()) sum += c.security_bits;
  return sum / static_cast<double>(per_ue_step.size());
}

const model::NormalizationBounds& normalization_bounds(const model::Scenario& s) {
  return s.norm_bounds();
}

ObjectiveReport objective(const Assignment& a, const model::Scenario& s,
                          double alpha, NormalizationMode mode) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  check_dims(a, s);
  const auto& bounds = s.norm_bounds();

  ObjectiveReport report;
  report.alpha = alpha;
  report.per_ue_step = Grid2<CellMetrics>(s.n_ues(), s.horizon());

  for (int t = 0; t < s.horizon(); ++t) {
    for (int i = 0; i < s.n_ues(); ++i) {
      CellMetrics& cell = report.per_ue_step(i, t);
      const auto& opt = s.catalog()[a.option_of(i, t)];
      cell.security_bits = opt.security_bits;
      cell.latency_s = total_latency_s(s, i, a.oru_of(i, t), a.option_of(i, t), t);
      cell.norm_security = cell.security_bits / bounds.security_max_bits;
      const double l_max = mode == NormalizationMode::PerCell
                               ? bounds.latency_max_s(i, t)
                               : bounds.latency_global_max_s;
      // A zero bound only happens for an empty payload; its latency is zero
      // and normalizes to zero.
      cell.norm_latency = l_max > 0.0 ? cell.latency_s / l_max : 0.0;
      report.security_term += 1.0 - cell.norm_security;
      report.latency_term += cell.norm_latency;
    }
  }
  report.total = (1.0 - alpha) * report.security_term + alpha * report.latency_term;
  return report;
}

}  // namespace oranopt::problem
