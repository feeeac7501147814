#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oranopt/harness.hpp"
#include "oranopt/problem.hpp"
#include "oranopt/scenario.hpp"
#include "oranopt/solvers.hpp"

namespace {

namespace fs = std::filesystem;
using oranopt::harness::format_double;
using oranopt::harness::RunLog;
using oranopt::harness::RunManifest;
using oranopt::harness::SolverKind;

oranopt::scenario::Range parse_range(const std::string& text) {
  const auto sep = text.find(':');
  if (sep == std::string::npos) {
    const double v = std::stod(text);
    return {v, v};
  }
  return {std::stod(text.substr(0, sep)), std::stod(text.substr(sep + 1))};
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto comma = text.find(',', pos);
    const auto piece = text.substr(pos, comma == std::string::npos
                                            ? std::string::npos
                                            : comma - pos);
    if (!piece.empty()) out.push_back(std::stod(piece));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// Options shared by every subcommand that needs a problem instance.
struct SourceOpts {
  std::string scenario_path;
  std::string preset;
  oranopt::scenario::GenParams gen;
  std::string w_bits, rate_bps, payload_kb, gamma, ue_clock, oru_clock, battery;
  bool no_snap_w = false;
};

void add_source_options(CLI::App* cmd, SourceOpts* src) {
  cmd->add_option("--scenario", src->scenario_path,
                  "Load the instance from this scenario file");
  cmd->add_option("--preset", src->preset,
                  "Built-in instance (depletion)");
  cmd->add_option("--seed", src->gen.seed, "Generator seed");
  cmd->add_option("--ues", src->gen.n_ues, "Number of devices");
  cmd->add_option("--orus", src->gen.n_orus, "Number of radio units");
  cmd->add_option("--horizon", src->gen.horizon, "Number of time steps");
  cmd->add_option("--rb", src->gen.resource_blocks, "Resource blocks per radio unit");
  cmd->add_option("--w-bits", src->w_bits, "Security requirement range lo:hi");
  cmd->add_option("--rate-bps", src->rate_bps, "Link rate range lo:hi");
  cmd->add_option("--payload-kb", src->payload_kb, "Payload range lo:hi in KB");
  cmd->add_option("--gamma-cycles", src->gamma, "Cycle budget range lo:hi");
  cmd->add_option("--ue-clock-hz", src->ue_clock, "Device clock range lo:hi");
  cmd->add_option("--oru-clock-hz", src->oru_clock, "Radio unit clock range lo:hi");
  cmd->add_option("--battery-j", src->battery, "Battery range lo:hi in joules");
  cmd->add_option("--e-cp-w", src->gen.e_cp_watts, "Compute power draw in watts");
  cmd->add_option("--e-comm-w", src->gen.e_comm_watts, "Transmit power draw in watts");
  cmd->add_flag("--no-snap-w", src->no_snap_w,
                "Keep continuous security requirement draws");
}

void finish_gen_params(SourceOpts* src) {
  if (!src->w_bits.empty()) src->gen.w_bits = parse_range(src->w_bits);
  if (!src->rate_bps.empty()) src->gen.rate_bps = parse_range(src->rate_bps);
  if (!src->payload_kb.empty()) src->gen.payload_kb = parse_range(src->payload_kb);
  if (!src->gamma.empty()) src->gen.compute_budget_cycles = parse_range(src->gamma);
  if (!src->ue_clock.empty()) src->gen.ue_clock_hz = parse_range(src->ue_clock);
  if (!src->oru_clock.empty()) src->gen.oru_clock_hz = parse_range(src->oru_clock);
  if (!src->battery.empty()) src->gen.battery_joules = parse_range(src->battery);
  src->gen.snap_w_to_catalog = !src->no_snap_w;
}

oranopt::model::Scenario resolve_scenario(SourceOpts* src) {
  finish_gen_params(src);
  if (!src->scenario_path.empty()) return oranopt::scenario::load(src->scenario_path);
  if (!src->preset.empty()) {
    if (src->preset == "depletion") return oranopt::scenario::demo_depletion_scenario();
    throw std::invalid_argument("unknown preset: " + src->preset);
  }
  return oranopt::scenario::generate(src->gen);
}

// Fills the manifest's instance source; presets are materialized as a
// scenario file under out_dir so reruns read identical bytes.
void manifest_source(RunManifest* manifest, SourceOpts* src, const fs::path& out_dir) {
  finish_gen_params(src);
  if (!src->scenario_path.empty()) {
    manifest->scenario_path = src->scenario_path;
  } else if (!src->preset.empty()) {
    if (src->preset != "depletion") {
      throw std::invalid_argument("unknown preset: " + src->preset);
    }
    const fs::path path = out_dir / "scenario.json";
    fs::create_directories(out_dir);
    oranopt::scenario::save(oranopt::scenario::demo_depletion_scenario(), path);
    manifest->scenario_path = path.string();
  } else {
    manifest->gen = src->gen;
  }
}

struct SolverOpts {
  std::string solvers = "iterative,oneshot";
  double ceiling = 1e8;
  double iter_epsilon = 1e-4;
  int iter_umax = 50;
  std::string init = "bestrate";
  std::uint64_t init_seed = 0;
  double os_epsilon_pair = 1e-2;
  double os_step_tol = 1e-6;
  int os_max_iter = 400;
  std::string os_rounding = "repair";
};

void add_solver_options(CLI::App* cmd, SolverOpts* opts) {
  cmd->add_option("--solvers", opts->solvers,
                  "Comma list of exhaustive,myopic,iterative,oneshot");
  cmd->add_option("--ceiling", opts->ceiling, "Exhaustive candidate ceiling");
  cmd->add_option("--iter-epsilon", opts->iter_epsilon, "Iterative stop tolerance");
  cmd->add_option("--iter-umax", opts->iter_umax, "Iterative iteration cap");
  cmd->add_option("--init", opts->init, "Iterative start: bestrate|roundrobin|seeded");
  cmd->add_option("--init-seed", opts->init_seed, "Seed for --init seeded");
  cmd->add_option("--os-epsilon-pair", opts->os_epsilon_pair,
                  "One-shot pairwise product bound");
  cmd->add_option("--os-step-tol", opts->os_step_tol, "One-shot step tolerance");
  cmd->add_option("--os-max-iter", opts->os_max_iter,
                  "One-shot gradient steps per penalty round");
  cmd->add_option("--os-rounding", opts->os_rounding,
                  "One-shot discretization: floor|repair");
}

oranopt::harness::SolverSetup make_setup(const SolverOpts& opts) {
  oranopt::harness::SolverSetup setup;
  setup.solvers.clear();
  std::size_t pos = 0;
  while (pos < opts.solvers.size()) {
    const auto comma = opts.solvers.find(',', pos);
    const auto piece = opts.solvers.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!piece.empty()) {
      setup.solvers.push_back(oranopt::harness::solver_from_string(piece));
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (setup.solvers.empty()) throw std::invalid_argument("no solvers selected");
  setup.exhaustive.candidate_ceiling = opts.ceiling;
  setup.iterative.epsilon = opts.iter_epsilon;
  setup.iterative.u_max = opts.iter_umax;
  if (opts.init == "bestrate") {
    setup.iterative.x_init = oranopt::solvers::InitPolicy::BestRate;
  } else if (opts.init == "roundrobin") {
    setup.iterative.x_init = oranopt::solvers::InitPolicy::RoundRobin;
  } else if (opts.init == "seeded") {
    setup.iterative.x_init = oranopt::solvers::InitPolicy::Seeded;
  } else {
    throw std::invalid_argument("unknown init policy: " + opts.init);
  }
  setup.iterative.seed = opts.init_seed;
  setup.oneshot.epsilon_pair = opts.os_epsilon_pair;
  setup.oneshot.step_tolerance = opts.os_step_tol;
  setup.oneshot.max_iterations = opts.os_max_iter;
  if (opts.os_rounding == "floor") {
    setup.oneshot.rounding = oranopt::solvers::Rounding::Floor;
  } else if (opts.os_rounding == "repair") {
    setup.oneshot.rounding = oranopt::solvers::Rounding::NearestFeasible;
  } else {
    throw std::invalid_argument("unknown rounding: " + opts.os_rounding);
  }
  return setup;
}

void print_outcome(const std::string& solver,
                   const oranopt::solvers::SolveOutcome& out) {
  std::cout << solver << ": " << to_string(out.status);
  if (out.report) {
    std::cout << "  total=" << format_double(out.report->total)
              << "  security_term=" << format_double(out.report->security_term)
              << "  latency_term=" << format_double(out.report->latency_term);
  }
  if (!out.diagnostic.empty()) std::cout << "  (" << out.diagnostic << ")";
  std::cout << "  wall=" << format_double(out.wall_time_s) << "s"
            << "  evals=" << out.evaluations << "\n";
}

nlohmann::json outcome_json(const oranopt::solvers::SolveOutcome& out) {
  nlohmann::json doc;
  doc["status"] = to_string(out.status);
  doc["wall_time_s"] = out.wall_time_s;
  doc["evaluations"] = out.evaluations;
  if (!out.diagnostic.empty()) doc["diagnostic"] = out.diagnostic;
  if (out.infeasible_step) doc["infeasible_step"] = *out.infeasible_step;
  if (out.report) {
    doc["objective"] = {{"alpha", out.report->alpha},
                        {"security_term", out.report->security_term},
                        {"latency_term", out.report->latency_term},
                        {"total", out.report->total}};
  }
  if (out.assignment) {
    nlohmann::json oru = nlohmann::json::array();
    nlohmann::json opt = nlohmann::json::array();
    for (int i = 0; i < out.assignment->oru_of.rows(); ++i) {
      nlohmann::json r1 = nlohmann::json::array();
      nlohmann::json r2 = nlohmann::json::array();
      for (int t = 0; t < out.assignment->oru_of.cols(); ++t) {
        r1.push_back(out.assignment->oru_of(i, t));
        r2.push_back(out.assignment->option_of(i, t));
      }
      oru.push_back(std::move(r1));
      opt.push_back(std::move(r2));
    }
    doc["assignment"] = {{"oru_of", std::move(oru)}, {"option_of", std::move(opt)}};
  }
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& e : out.trace) {
    trace.push_back({{"iteration", e.iteration},
                     {"objective", e.objective},
                     {"block", e.block}});
  }
  doc["trace"] = std::move(trace);
  return doc;
}

// Shared tail for the sweep subcommands: write CSV + manifest.
void emit(const RunManifest& manifest, const oranopt::harness::ResultsTable& table,
          const RunLog& log, const fs::path& out_dir, const std::string& csv_name) {
  const fs::path csv_path = out_dir / csv_name;
  const fs::path manifest_path = out_dir / "manifest.json";
  oranopt::harness::write_text(csv_path, table.to_csv());
  oranopt::harness::write_text(
      manifest_path,
      oranopt::harness::manifest_json_text(manifest, log, {csv_path.string()}));
  std::cout << "wrote " << csv_path.string() << " (" << table.rows.size()
            << " rows) and " << manifest_path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure data-offloading planner: association and cipher "
               "selection under latency, security, and battery constraints"};
  app.require_subcommand(1);

  // gen ------------------------------------------------------------------
  auto* gen_cmd = app.add_subcommand("gen", "Generate a scenario file");
  SourceOpts gen_src;
  std::string gen_out;
  add_source_options(gen_cmd, &gen_src);
  gen_cmd->add_option("-o,--out", gen_out, "Output scenario path")->required();

  // solve ----------------------------------------------------------------
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance");
  SourceOpts solve_src;
  SolverOpts solve_opts;
  double solve_alpha = 0.5;
  std::string solve_norm = "per-cell";
  std::string outcome_path;
  add_source_options(solve_cmd, &solve_src);
  add_solver_options(solve_cmd, &solve_opts);
  solve_cmd->add_option("--alpha", solve_alpha, "Trade-off weight in [0,1]");
  solve_cmd->add_option("--norm", solve_norm,
                        "Report normalization: per-cell|global");
  solve_cmd->add_option("--outcome", outcome_path, "Write outcome JSON here");

  // sweep-alpha ------------------------------------------------------------
  auto* sa_cmd = app.add_subcommand("sweep-alpha", "Trade-off sweep over alpha");
  SourceOpts sa_src;
  SolverOpts sa_opts;
  std::string sa_grid = "0.1,0.3,0.5,0.7,0.9";
  std::string sa_dir = "results/sweep-alpha";
  add_source_options(sa_cmd, &sa_src);
  add_solver_options(sa_cmd, &sa_opts);
  sa_cmd->add_option("--alphas", sa_grid, "Comma list of alpha values");
  sa_cmd->add_option("--out-dir", sa_dir, "Output directory");

  // sweep-w ----------------------------------------------------------------
  auto* sw_cmd = app.add_subcommand(
      "sweep-w", "Sweep the radio units' security requirement");
  SourceOpts sw_src;
  SolverOpts sw_opts;
  std::string sw_grid = "6,8,12";
  double sw_alpha = 0.5;
  std::string sw_dir = "results/sweep-w";
  add_source_options(sw_cmd, &sw_src);
  add_solver_options(sw_cmd, &sw_opts);
  sw_cmd->add_option("--w-grid", sw_grid, "Comma list of requirement levels");
  sw_cmd->add_option("--alpha", sw_alpha, "Trade-off weight");
  sw_cmd->add_option("--out-dir", sw_dir, "Output directory");

  // sweep-resources ---------------------------------------------------------
  auto* sr_cmd = app.add_subcommand(
      "sweep-resources", "Compare low/medium/high device resource tiers");
  SourceOpts sr_src;
  SolverOpts sr_opts;
  double sr_alpha = 0.1;
  std::string sr_dir = "results/sweep-resources";
  add_source_options(sr_cmd, &sr_src);
  add_solver_options(sr_cmd, &sr_opts);
  sr_cmd->add_option("--alpha", sr_alpha, "Trade-off weight");
  sr_cmd->add_option("--out-dir", sr_dir, "Output directory");

  // trace-convergence -------------------------------------------------------
  auto* tc_cmd = app.add_subcommand("trace-convergence",
                                    "Objective per iterative-solver iteration");
  SourceOpts tc_src;
  SolverOpts tc_opts;
  double tc_alpha = 0.5;
  std::string tc_dir = "results/trace-convergence";
  add_source_options(tc_cmd, &tc_src);
  add_solver_options(tc_cmd, &tc_opts);
  tc_cmd->add_option("--alpha", tc_alpha, "Trade-off weight");
  tc_cmd->add_option("--out-dir", tc_dir, "Output directory");

  // trace-battery -----------------------------------------------------------
  auto* tb_cmd = app.add_subcommand(
      "trace-battery", "Remaining battery per step for each solver");
  SourceOpts tb_src;
  SolverOpts tb_opts;
  tb_opts.solvers = "myopic,iterative";
  double tb_alpha = 0.1;
  std::string tb_dir = "results/trace-battery";
  add_source_options(tb_cmd, &tb_src);
  add_solver_options(tb_cmd, &tb_opts);
  tb_cmd->add_option("--alpha", tb_alpha, "Trade-off weight");
  tb_cmd->add_option("--out-dir", tb_dir, "Output directory");

  // verify -------------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite");
  std::string verify_path;
  verify_cmd->add_option("--scenario", verify_path, "Scenario file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) {
      finish_gen_params(&gen_src);
      oranopt::model::Scenario s = resolve_scenario(&gen_src);
      if (fs::path(gen_out).has_parent_path()) {
        fs::create_directories(fs::path(gen_out).parent_path());
      }
      oranopt::scenario::save(s, gen_out);
      std::cout << "wrote " << gen_out << "\n";
    } else if (*solve_cmd) {
      const auto setup = make_setup(solve_opts);
      const oranopt::model::Scenario s = resolve_scenario(&solve_src);
      nlohmann::json all = nlohmann::json::object();
      for (SolverKind kind : setup.solvers) {
        auto out = oranopt::harness::run_solver(kind, s, solve_alpha, setup);
        if (out.report && solve_norm == "global") {
          out.report = oranopt::problem::objective(
              *out.assignment, s, solve_alpha,
              oranopt::problem::NormalizationMode::GlobalMax);
        }
        print_outcome(to_string(kind), out);
        all[to_string(kind)] = outcome_json(out);
      }
      if (!outcome_path.empty()) {
        oranopt::harness::write_text(outcome_path, all.dump(2) + "\n");
      }
    } else if (*sa_cmd) {
      RunManifest manifest;
      manifest.experiment = "sweep-alpha";
      manifest_source(&manifest, &sa_src, sa_dir);
      manifest.setup = make_setup(sa_opts);
      manifest.alpha_grid = parse_grid(sa_grid);
      RunLog log;
      emit(manifest, oranopt::harness::sweep_alpha(manifest, &log), log, sa_dir,
           "alpha_sweep.csv");
    } else if (*sw_cmd) {
      RunManifest manifest;
      manifest.experiment = "sweep-w";
      manifest_source(&manifest, &sw_src, sw_dir);
      manifest.setup = make_setup(sw_opts);
      manifest.alpha = sw_alpha;
      manifest.w_grid = parse_grid(sw_grid);
      RunLog log;
      emit(manifest, oranopt::harness::sweep_security_requirement(manifest, &log),
           log, sw_dir, "w_sweep.csv");
    } else if (*sr_cmd) {
      RunManifest manifest;
      manifest.experiment = "sweep-resources";
      finish_gen_params(&sr_src);
      if (!sr_src.scenario_path.empty() || !sr_src.preset.empty()) {
        throw std::invalid_argument(
            "sweep-resources regenerates instances; give generator flags");
      }
      manifest.gen = sr_src.gen;
      manifest.setup = make_setup(sr_opts);
      manifest.alpha = sr_alpha;
      RunLog log;
      emit(manifest, oranopt::harness::sweep_resources(manifest, &log), log,
           sr_dir, "resource_sweep.csv");
    } else if (*tc_cmd) {
      RunManifest manifest;
      manifest.experiment = "trace-convergence";
      manifest_source(&manifest, &tc_src, tc_dir);
      manifest.setup = make_setup(tc_opts);
      manifest.alpha = tc_alpha;
      RunLog log;
      emit(manifest, oranopt::harness::trace_convergence(manifest, &log), log,
           tc_dir, "convergence.csv");
    } else if (*tb_cmd) {
      RunManifest manifest;
      manifest.experiment = "trace-battery";
      manifest_source(&manifest, &tb_src, tb_dir);
      manifest.setup = make_setup(tb_opts);
      manifest.alpha = tb_alpha;
      RunLog log;
      emit(manifest, oranopt::harness::trace_battery(manifest, &log), log,
           tb_dir, "battery.csv");
    } else if (*verify_cmd) {
      const oranopt::model::Scenario s = oranopt::scenario::load(verify_path);
      const bool ok = oranopt::harness::run_verification(s, std::cout);
      std::cout << (ok ? "all checks passed" : "checks FAILED") << "\n";
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
