#include "oranopt/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "oranopt/problem.hpp"
#include "oranopt/rng.hpp"

namespace oranopt::harness {

namespace {

using nlohmann::json;

constexpr char kEmpty[] = "";

std::string solver_label(SolverKind kind) { return to_string(kind); }

void log_time(RunLog* log, const std::string& label, double seconds) {
  if (log) log->wall_time_s.emplace_back(label, seconds);
}

// Metric columns shared by the sweep tables.
std::vector<std::string> outcome_metrics(const solvers::SolveOutcome& out) {
  if (!out.report) return {kEmpty, kEmpty, kEmpty, kEmpty, kEmpty};
  const auto& r = *out.report;
  double lat_sum = 0.0, sec_sum = 0.0;
  for (const auto& cell : r.per_ue_step.data()) {
    lat_sum += cell.norm_latency;
    sec_sum += cell.norm_security;
  }
  return {format_double(r.mean_norm_latency()),
          format_double(r.mean_norm_security()), format_double(lat_sum),
          format_double(sec_sum), format_double(r.total)};
}

json range_json(const scenario::Range& r) {
  return json{{"min", r.min}, {"max", r.max}};
}

json gen_params_json(const scenario::GenParams& p) {
  return json{
      {"n_ues", p.n_ues},
      {"n_orus", p.n_orus},
      {"horizon", p.horizon},
      {"w_bits", range_json(p.w_bits)},
      {"rate_bps", range_json(p.rate_bps)},
      {"payload_kb", range_json(p.payload_kb)},
      {"compute_budget_cycles", range_json(p.compute_budget_cycles)},
      {"ue_clock_hz", range_json(p.ue_clock_hz)},
      {"oru_clock_hz", range_json(p.oru_clock_hz)},
      {"battery_joules", range_json(p.battery_joules)},
      {"e_cp_watts", p.e_cp_watts},
      {"e_comm_watts", p.e_comm_watts},
      {"resource_blocks", p.resource_blocks},
      {"seed", p.seed},
      {"snap_w_to_catalog", p.snap_w_to_catalog},
      {"cycle_costs",
       {{"n_and", p.cycle_costs.n_and},
        {"n_or", p.cycle_costs.n_or},
        {"n_shift", p.cycle_costs.n_shift},
        {"n_xor", p.cycle_costs.n_xor}}},
  };
}

// Scenario with every radio unit's security requirement overridden.
model::Scenario with_requirement(const model::Scenario& s, double w_bits) {
  std::vector<model::RadioUnit> orus = s.orus();
  for (auto& oru : orus) oru.security_requirement_bits = w_bits;
  return model::Scenario(s.ues(), std::move(orus), s.horizon(), s.rate_table(),
                         s.e_cp_watts(), s.e_comm_watts(), s.cycle_costs());
}

}  // namespace

std::string artifact_version() { return "0.1.0"; }

const char* to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::Exhaustive: return "exhaustive";
    case SolverKind::Myopic: return "myopic";
    case SolverKind::Iterative: return "iterative";
    case SolverKind::OneShot: return "oneshot";
  }
  return "?";
}

SolverKind solver_from_string(const std::string& name) {
  if (name == "exhaustive") return SolverKind::Exhaustive;
  if (name == "myopic") return SolverKind::Myopic;
  if (name == "iterative") return SolverKind::Iterative;
  if (name == "oneshot") return SolverKind::OneShot;
  throw std::invalid_argument("unknown solver: " + name);
}

solvers::SolveOutcome run_solver(SolverKind kind, const model::Scenario& s,
                                 double alpha, const SolverSetup& setup) {
  switch (kind) {
    case SolverKind::Exhaustive:
      return solvers::solve_exhaustive(s, alpha, setup.exhaustive);
    case SolverKind::Myopic:
      return solvers::solve_exhaustive_myopic(s, alpha, setup.exhaustive);
    case SolverKind::Iterative:
      return solvers::solve_iterative(s, alpha, setup.iterative);
    case SolverKind::OneShot:
      return solvers::solve_oneshot(s, alpha, setup.oneshot);
  }
  throw std::invalid_argument("unknown solver kind");
}

std::vector<ResourceTier> default_tiers() {
  return {
      {"low", {656.0, 6000.0}, {1.0e6, 2.0e6}},
      {"medium", {6168.0, 1.0e4}, {5.0e6, 1.0e7}},
      {"high", {16777216.0, 1.7e7}, {1.0e7, 2.0e7}},
  };
}

std::string ResultsTable::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c) out += ',';
    out += header[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += row[c];
    }
    out += '\n';
  }
  return out;
}

model::Scenario manifest_scenario(const RunManifest& manifest) {
  if (manifest.gen) return scenario::generate(*manifest.gen);
  if (!manifest.scenario_path.empty()) return scenario::load(manifest.scenario_path);
  throw std::invalid_argument(
      "manifest needs generator params or a scenario path");
}

ResultsTable sweep_alpha(const RunManifest& manifest, RunLog* log) {
  ResultsTable table;
  table.header = {"alpha",           "solver",
                  "status",          "latency_norm_mean",
                  "security_norm_mean", "latency_norm_sum",
                  "security_norm_sum",  "objective_total"};
  const model::Scenario s = manifest_scenario(manifest);
  for (double alpha : manifest.alpha_grid) {
    for (SolverKind kind : manifest.setup.solvers) {
      const auto out = run_solver(kind, s, alpha, manifest.setup);
      log_time(log, "alpha=" + format_double(alpha) + "/" + solver_label(kind),
               out.wall_time_s);
      std::vector<std::string> row{format_double(alpha), solver_label(kind),
                                   to_string(out.status)};
      for (auto& cell : outcome_metrics(out)) row.push_back(std::move(cell));
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

ResultsTable sweep_security_requirement(const RunManifest& manifest, RunLog* log) {
  ResultsTable table;
  table.header = {"w_bits",          "solver",
                  "status",          "latency_norm_mean",
                  "security_norm_mean", "latency_norm_sum",
                  "security_norm_sum",  "objective_total"};
  const model::Scenario base = manifest_scenario(manifest);

  // Snap grid values to exact catalog security levels, so a typed 7.585
  // becomes log2(192) and the boundary comparison stays an equality.
  std::vector<double> levels;
  for (double w : manifest.w_grid) {
    const crypto::CipherOption* hit = nullptr;
    for (const auto& opt : base.catalog()) {
      if (std::abs(opt.security_bits - w) <= 5e-3) hit = &opt;
    }
    if (!hit) {
      throw std::invalid_argument("w grid value " + format_double(w) +
                                  " is not a catalog security level");
    }
    levels.push_back(hit->security_bits);
  }

  for (std::size_t idx = 0; idx < levels.size(); ++idx) {
    const double w = levels[idx];
    const model::Scenario s = with_requirement(base, w);
    for (SolverKind kind : manifest.setup.solvers) {
      const auto out = run_solver(kind, s, manifest.alpha, manifest.setup);
      log_time(log, "w=" + format_double(w) + "/" + solver_label(kind),
               out.wall_time_s);
      std::vector<std::string> row{format_double(w), solver_label(kind),
                                   to_string(out.status)};
      for (auto& cell : outcome_metrics(out)) row.push_back(std::move(cell));
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

ResultsTable sweep_resources(const RunManifest& manifest, RunLog* log) {
  if (!manifest.gen) {
    throw std::invalid_argument("resource sweep requires generator params");
  }
  ResultsTable table;
  table.header = {"tier",
                  "solver",
                  "status",
                  "security_bits_mean",
                  "latency_norm_mean",
                  "security_norm_mean",
                  "latency_norm_sum",
                  "security_norm_sum",
                  "objective_total"};
  for (const auto& tier : manifest.tiers) {
    scenario::GenParams params = *manifest.gen;
    params.compute_budget_cycles = tier.compute_budget_cycles;
    params.battery_joules = tier.battery_joules;
    const model::Scenario s = scenario::generate(params);
    for (SolverKind kind : manifest.setup.solvers) {
      const auto out = run_solver(kind, s, manifest.alpha, manifest.setup);
      log_time(log, "tier=" + tier.name + "/" + solver_label(kind),
               out.wall_time_s);
      std::vector<std::string> row{tier.name, solver_label(kind),
                                   to_string(out.status)};
      if (out.report) {
        row.push_back(format_double(out.report->mean_security_bits()));
        for (auto& cell : outcome_metrics(out)) row.push_back(std::move(cell));
      } else {
        row.insert(row.end(), {kEmpty, kEmpty, kEmpty, kEmpty, kEmpty, kEmpty});
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

ResultsTable trace_convergence(const RunManifest& manifest, RunLog* log) {
  ResultsTable table;
  table.header = {"iteration", "objective_total", "status"};
  const model::Scenario s = manifest_scenario(manifest);
  const auto out = run_solver(SolverKind::Iterative, s, manifest.alpha,
                              manifest.setup);
  log_time(log, "iterative", out.wall_time_s);
  for (const auto& entry : out.trace) {
    table.rows.push_back({std::to_string(entry.iteration),
                          format_double(entry.objective),
                          to_string(out.status)});
  }
  return table;
}

ResultsTable trace_battery(const RunManifest& manifest, RunLog* log) {
  ResultsTable table;
  table.header = {"solver", "ue", "step", "security_bits",
                  "battery_remaining_j", "status"};
  const model::Scenario s = manifest_scenario(manifest);
  for (SolverKind kind : manifest.setup.solvers) {
    const auto out = run_solver(kind, s, manifest.alpha, manifest.setup);
    log_time(log, solver_label(kind), out.wall_time_s);

    const problem::Assignment* a = nullptr;
    int steps = 0;
    if (out.assignment) {
      a = &*out.assignment;
      steps = s.horizon();
    } else if (out.partial_assignment) {
      a = &*out.partial_assignment;
      steps = out.steps_completed;
    }
    if (!a) continue;

    for (int i = 0; i < s.n_ues(); ++i) {
      double remaining = s.ue(i).battery_joules;
      for (int t = 0; t < steps; ++t) {
        remaining -=
            model::step_energy(s, i, a->oru_of(i, t), a->option_of(i, t), t)
                .total();
        table.rows.push_back(
            {solver_label(kind), std::to_string(i), std::to_string(t),
             format_double(s.catalog()[a->option_of(i, t)].security_bits),
             format_double(remaining), to_string(out.status)});
      }
    }
  }
  return table;
}

bool run_verification(const model::Scenario& s, std::ostream& out) {
  bool ok = true;
  auto report = [&](const char* name, bool pass) {
    out << (pass ? "[ OK ] " : "[FAIL] ") << name << "\n";
    ok = ok && pass;
  };

  const auto& cat = s.catalog();
  bool monotone = true;
  for (std::size_t g = 1; g < cat.size(); ++g) {
    if (cat[g].security_bits <= cat[g - 1].security_bits) monotone = false;
    if (cat[g].key_bits <= cat[g - 1].key_bits) monotone = false;
  }
  report("catalog ordered by key length with increasing security", monotone);

  bool per_algo = true;
  for (std::size_t g = 1; g < cat.size(); ++g) {
    if (cat[g].algorithm != cat[g - 1].algorithm) continue;
    if (cat[g].enc_cycles_per_block <= cat[g - 1].enc_cycles_per_block) per_algo = false;
    if (cat[g].dec_cycles_per_block <= cat[g - 1].dec_cycles_per_block) per_algo = false;
  }
  report("cycle counts increase with key length within each algorithm", per_algo);

  if (s.cycle_costs() == crypto::CycleCosts{}) {
    std::int64_t min_enc = cat.front().enc_cycles_per_block;
    std::int64_t max_enc = cat.front().enc_cycles_per_block;
    for (const auto& opt : cat) {
      min_enc = std::min(min_enc, opt.enc_cycles_per_block);
      max_enc = std::max(max_enc, opt.enc_cycles_per_block);
    }
    report("default-cost catalog spans 656 to 16777216 cycles per block",
           min_enc == 656 && max_enc == 16777216);
  }

  const auto& bounds = s.norm_bounds();
  bool bounds_ok = bounds.security_max_bits == cat.back().security_bits;
  for (int i = 0; i < s.n_ues() && bounds_ok; ++i) {
    for (int t = 0; t < s.horizon(); ++t) {
      double worst = 0.0;
      for (int j = 0; j < s.n_orus(); ++j) {
        for (int g = 0; g < static_cast<int>(cat.size()); ++g) {
          worst = std::max(worst, model::total_latency_s(s, i, j, g, t));
        }
      }
      if (worst != bounds.latency_max_s(i, t)) {
        bounds_ok = false;
        break;
      }
    }
  }
  report("cached normalization bounds match a recomputation", bounds_ok);

  // Random assignments must normalize into [0, 1] and satisfy the affine
  // identity in the trade-off weight.
  bool norm_ok = true;
  bool affine_ok = true;
  for (int trial = 0; trial < 16; ++trial) {
    problem::Assignment a;
    a.oru_of = Grid2<int>(s.n_ues(), s.horizon());
    a.option_of = Grid2<int>(s.n_ues(), s.horizon());
    for (int i = 0; i < s.n_ues(); ++i) {
      for (int t = 0; t < s.horizon(); ++t) {
        a.oru_of(i, t) = static_cast<int>(
            rng::uniform01(trial, 11, i, t) * s.n_orus());
        a.oru_of(i, t) = std::min(a.oru_of(i, t), s.n_orus() - 1);
        a.option_of(i, t) = static_cast<int>(
            rng::uniform01(trial, 12, i, t) * cat.size());
        a.option_of(i, t) = std::min(a.option_of(i, t),
                                     static_cast<int>(cat.size()) - 1);
      }
    }
    const double alpha = trial / 15.0;
    const auto rep = problem::objective(a, s, alpha);
    for (const auto& cell : rep.per_ue_step.data()) {
      if (cell.norm_latency < 0.0 || cell.norm_latency > 1.0 ||
          cell.norm_security < 0.0 || cell.norm_security > 1.0) {
        norm_ok = false;
      }
    }
    const double affine =
        rep.security_term + alpha * (rep.latency_term - rep.security_term);
    if (std::abs(affine - rep.total) > 1e-12 * std::max(1.0, std::abs(rep.total))) {
      affine_ok = false;
    }
  }
  report("normalized terms stay within [0, 1]", norm_ok);
  report("objective is affine in the trade-off weight", affine_ok);

  return ok;
}

std::string manifest_json_text(const RunManifest& manifest, const RunLog& log,
                               const std::vector<std::string>& outputs) {
  json doc;
  doc["experiment"] = manifest.experiment;
  doc["artifact_version"] = artifact_version();
  if (manifest.gen) doc["gen_params"] = gen_params_json(*manifest.gen);
  if (!manifest.scenario_path.empty()) doc["scenario_path"] = manifest.scenario_path;
  json solvers_j = json::array();
  for (SolverKind kind : manifest.setup.solvers) solvers_j.push_back(to_string(kind));
  doc["solvers"] = std::move(solvers_j);
  doc["configs"] = {
      {"exhaustive", {{"candidate_ceiling", manifest.setup.exhaustive.candidate_ceiling}}},
      {"iterative",
       {{"epsilon", manifest.setup.iterative.epsilon},
        {"u_max", manifest.setup.iterative.u_max},
        {"x_init", static_cast<int>(manifest.setup.iterative.x_init)},
        {"seed", manifest.setup.iterative.seed}}},
      {"oneshot",
       {{"epsilon_pair", manifest.setup.oneshot.epsilon_pair},
        {"step_tolerance", manifest.setup.oneshot.step_tolerance},
        {"max_iterations", manifest.setup.oneshot.max_iterations},
        {"rounding",
         manifest.setup.oneshot.rounding == solvers::Rounding::Floor
             ? "floor"
             : "nearest_feasible"}}},
  };
  doc["alpha"] = manifest.alpha;
  doc["alpha_grid"] = manifest.alpha_grid;
  doc["w_grid"] = manifest.w_grid;
  json tiers = json::array();
  for (const auto& tier : manifest.tiers) {
    tiers.push_back({{"name", tier.name},
                     {"compute_budget_cycles", range_json(tier.compute_budget_cycles)},
                     {"battery_joules", range_json(tier.battery_joules)}});
  }
  doc["tiers"] = std::move(tiers);
  doc["outputs"] = outputs;
  json times = json::array();
  for (const auto& [label, seconds] : log.wall_time_s) {
    times.push_back({{"solve", label}, {"wall_time_s", seconds}});
  }
  doc["wall_times"] = std::move(times);
  return doc.dump(2) + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace oranopt::harness
