// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run with --freeze to regenerate the frozen fixture tables below.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "oranopt/harness.hpp"
#include "oranopt/problem.hpp"
#include "oranopt/scenario.hpp"
#include "oranopt/solvers.hpp"

using namespace oranopt;
using solvers::SolveStatus;

namespace {

bool g_all_ok = true;

void report(int criterion, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion,
              name, detail.empty() ? "" : " - ", detail.c_str());
  g_all_ok = g_all_ok && ok;
}

// ---- shared fixtures -----------------------------------------------------

// Desk-scale generator for the oracle-equivalence fixtures: two radio units,
// payloads and batteries sized so random instances are usually feasible.
scenario::GenParams desk_params(std::uint64_t seed, int ues, int horizon) {
  scenario::GenParams p;
  p.n_ues = ues;
  p.n_orus = 2;
  p.horizon = horizon;
  p.payload_kb = {1.0, 100.0};
  p.rate_bps = {50.0, 100.0};
  p.battery_joules = {5.0e5, 2.0e6};
  p.seed = seed;
  return p;
}

struct OracleFixture {
  std::uint64_t seed;
  int ues;
  int horizon;
  double alpha;
  double iterative_gap;  // frozen objective gap vs the exhaustive optimum
  double oneshot_gap;
};

// Frozen by running with --freeze: seeds scanned in order from 300, keeping
// the first 24 whose exhaustive solve is feasible.
const OracleFixture kOracleFixtures[] = {
    // seed, ues, horizon, alpha, iterative_gap, oneshot_gap
    {300, 2, 1, 0.1, 0, 0},
    {301, 2, 2, 0.3, 0, 0},
    {302, 3, 1, 0.5, 0, 0},
    {303, 3, 2, 0.7, 0, 0},
    {304, 2, 1, 0.9, 0, 0},
    {305, 2, 2, 0.1, 0, 0.17377760367605399},
    {306, 3, 1, 0.3, 0, 0},
    {307, 3, 2, 0.5, 0, 0.034585636189750968},
    {308, 2, 1, 0.7, 0, 0},
    {309, 2, 2, 0.9, 0, 0},
    {310, 3, 1, 0.1, 0, 0},
    {311, 3, 2, 0.3, 0, 0},
    {312, 2, 1, 0.5, 0, 0},
    {313, 2, 2, 0.7, 0, 0.013866319139005601},
    {314, 3, 1, 0.9, 0, 0.016611567779215353},
    {315, 3, 2, 0.1, 0, 0},
    {316, 2, 1, 0.3, 0, 0},
    {317, 2, 2, 0.5, 0, 0},
    {318, 3, 1, 0.7, 0, 0},
    {319, 3, 2, 0.9, 0, 0},
    {320, 2, 1, 0.1, 0, 0},
    {321, 2, 2, 0.3, 0, 0},
    {322, 3, 1, 0.5, 0, 0},
    {323, 3, 2, 0.7, 0, 0},
};

// Trade-off sweep instance: the default generator scale (3 radio units,
// 4 devices, 3 steps) with link rates raised so cipher compute time is a
// visible share of the total latency. At the default tens-of-bps rates,
// transmission drowns every cipher's compute cost, the optimum never moves
// with alpha, and the monotonicity check would pass vacuously on constant
// columns; at these rates the batteries also genuinely constrain some
// schedules instead of ruling out all of them.
scenario::GenParams tradeoff_params(std::uint64_t seed) {
  scenario::GenParams p;  // defaults carry the remaining ranges
  p.rate_bps = {1.0e4, 1.0e5};
  p.seed = seed;
  return p;
}

constexpr std::uint64_t kTradeoffSeed = 0;  // frozen by --freeze scan

// Resource-tier generator: requirement satisfiable at the DES level,
// payloads modest enough that every tier's battery covers its schedule.
scenario::GenParams tier_base(std::uint64_t seed) {
  scenario::GenParams p;
  p.w_bits = {6.0, 6.0};
  p.payload_kb = {50.0, 200.0};
  p.rate_bps = {50.0, 100.0};
  p.seed = seed;
  return p;
}

harness::SolverSetup default_setup() {
  harness::SolverSetup setup;
  setup.solvers = {harness::SolverKind::Iterative, harness::SolverKind::OneShot};
  return setup;
}

// ---- criteria ------------------------------------------------------------

void criterion_1_cycle_table() {
  struct Row {
    std::int64_t key, enc, dec;
  };
  const Row expect[] = {
      {64, 656, 656},           {128, 6168, 12432},
      {192, 7512, 15168},       {256, 8856, 17904},
      {1024, 1048576, 1048576}, {2048, 4194304, 4194304},
      {3072, 9437184, 9437184}, {4096, 16777216, 16777216},
  };
  const auto cat = crypto::catalog();
  bool ok = cat.size() == 8;
  std::string detail;
  for (int g = 0; ok && g < 8; ++g) {
    if (cat[g].key_bits != expect[g].key ||
        cat[g].enc_cycles_per_block != expect[g].enc ||
        cat[g].dec_cycles_per_block != expect[g].dec) {
      ok = false;
      detail = "mismatch at key " + std::to_string(expect[g].key);
    }
  }
  report(1, "cycle-model regression (8-option enc/dec table)", ok, detail);
}

void criterion_2_oracle_equivalence(bool freeze) {
  bool ok = true;
  std::string detail;
  int checked = 0;
  double worst_iter = 0.0, worst_os = 0.0;

  if (freeze) std::printf("--- frozen oracle fixtures ---\n");
  for (const auto& fx : kOracleFixtures) {
    const auto s = scenario::generate(desk_params(fx.seed, fx.ues, fx.horizon));
    const auto oracle = solvers::solve_exhaustive(s, fx.alpha);
    if (oracle.status != SolveStatus::Optimal) {
      ok = false;
      detail = "seed " + std::to_string(fx.seed) + " lost oracle feasibility";
      continue;
    }
    const auto iter = solvers::solve_iterative(s, fx.alpha);
    const auto os = solvers::solve_oneshot(s, fx.alpha);
    if (!solvers::has_solution(iter.status) || !solvers::has_solution(os.status)) {
      ok = false;
      detail = "seed " + std::to_string(fx.seed) + " heuristic infeasible";
      continue;
    }
    const double gap_iter = iter.report->total - oracle.report->total;
    const double gap_os = os.report->total - oracle.report->total;
    if (freeze) {
      std::printf("    {%llu, %d, %d, %.1f, %.17g, %.17g},\n",
                  static_cast<unsigned long long>(fx.seed), fx.ues, fx.horizon,
                  fx.alpha, gap_iter, gap_os);
      continue;
    }
    ++checked;
    std::printf("    seed=%llu alpha=%.1f gap_iterative=%s gap_oneshot=%s\n",
                static_cast<unsigned long long>(fx.seed), fx.alpha,
                harness::format_double(gap_iter).c_str(),
                harness::format_double(gap_os).c_str());
    worst_iter = std::max(worst_iter, gap_iter);
    worst_os = std::max(worst_os, gap_os);
    if (!(gap_iter >= -1e-9 && gap_iter <= fx.iterative_gap + 1e-9)) {
      ok = false;
      detail = "seed " + std::to_string(fx.seed) + " iterative gap " +
               std::to_string(gap_iter) + " above frozen " +
               std::to_string(fx.iterative_gap);
    }
    if (!(gap_os >= -1e-9 && gap_os <= fx.oneshot_gap + 1e-9)) {
      ok = false;
      detail = "seed " + std::to_string(fx.seed) + " oneshot gap " +
               std::to_string(gap_os) + " above frozen " +
               std::to_string(fx.oneshot_gap);
    }
  }
  if (freeze) return;
  ok = ok && checked >= 20;
  report(2, "oracle equivalence on seeded desk instances", ok,
         detail.empty() ? std::to_string(checked) + " instances, worst gaps " +
                              harness::format_double(worst_iter) + " / " +
                              harness::format_double(worst_os)
                        : detail);
}

// Nonincreasing check with at most one adjacent violation of <= 2% absolute.
bool tolerably_nonincreasing(const std::vector<double>& v, std::string* why) {
  int violations = 0;
  for (std::size_t k = 1; k < v.size(); ++k) {
    const double rise = v[k] - v[k - 1];
    if (rise > 1e-12) {
      if (rise > 0.02) {
        *why = "adjacent rise of " + harness::format_double(rise);
        return false;
      }
      ++violations;
    }
  }
  if (violations > 1) {
    *why = std::to_string(violations) + " adjacent rises";
    return false;
  }
  return true;
}

void criterion_3_tradeoff(bool freeze) {
  const std::vector<double> grid = {0.1, 0.3, 0.5, 0.7, 0.9};
  if (freeze) {
    // Scan for a seed whose sweep is feasible throughout for both solvers.
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
      const auto s = scenario::generate(tradeoff_params(seed));
      bool all = true;
      for (double alpha : grid) {
        if (!solvers::has_solution(solvers::solve_iterative(s, alpha).status) ||
            !solvers::has_solution(solvers::solve_oneshot(s, alpha).status)) {
          all = false;
          break;
        }
      }
      if (all) {
        std::printf("--- tradeoff seed: %llu ---\n",
                    static_cast<unsigned long long>(seed));
        return;
      }
    }
    std::printf("--- tradeoff seed: NONE FOUND ---\n");
    return;
  }

  harness::RunManifest manifest;
  manifest.experiment = "acceptance-tradeoff";
  manifest.gen = tradeoff_params(kTradeoffSeed);
  manifest.setup = default_setup();
  manifest.alpha_grid = grid;
  const auto table = harness::sweep_alpha(manifest);

  bool ok = true;
  std::string detail;
  for (const char* solver : {"iterative", "oneshot"}) {
    std::vector<double> latency, security;
    for (const auto& row : table.rows) {
      if (row[1] != solver) continue;
      if (row[2] == "infeasible") {
        ok = false;
        detail = std::string(solver) + " infeasible at alpha " + row[0];
        continue;
      }
      latency.push_back(std::stod(row[3]));   // latency_norm_mean
      security.push_back(std::stod(row[4]));  // security_norm_mean
    }
    std::string why;
    if (latency.size() != grid.size()) {
      ok = false;
    } else {
      if (!tolerably_nonincreasing(latency, &why)) {
        ok = false;
        detail = std::string(solver) + " latency not monotone: " + why;
      }
      if (!tolerably_nonincreasing(security, &why)) {
        ok = false;
        detail = std::string(solver) + " security not monotone: " + why;
      }
    }
  }
  report(3, "monotone trade-off over the alpha grid", ok, detail);
}

void criterion_4_requirement_infeasibility() {
  bool ok = true;
  std::string detail;
  const harness::SolverKind all_solvers[] = {
      harness::SolverKind::Exhaustive, harness::SolverKind::Myopic,
      harness::SolverKind::Iterative, harness::SolverKind::OneShot};
  const auto setup = default_setup();

  int used = 0;
  for (int k = 0; k < 6; ++k) {
    const auto& fx = kOracleFixtures[k];
    auto params = desk_params(fx.seed, fx.ues, fx.horizon);

    params.w_bits = {12.0, 12.0};
    const auto hard = scenario::generate(params);
    bool weak_device = false;
    for (int i = 0; i < hard.n_ues(); ++i) {
      if (hard.ue(i).compute_budget_cycles < 16777216.0) weak_device = true;
    }
    if (!weak_device) continue;  // criterion premise needs one weak device
    ++used;

    for (auto kind : all_solvers) {
      const auto out = harness::run_solver(kind, hard, 0.5, setup);
      if (out.status != SolveStatus::Infeasible) {
        ok = false;
        detail = std::string(to_string(kind)) + " not infeasible at W=12, seed " +
                 std::to_string(fx.seed);
      }
    }

    params.w_bits = {6.0, 6.0};
    const auto easy = scenario::generate(params);
    for (auto kind : all_solvers) {
      const auto out = harness::run_solver(kind, easy, 0.5, setup);
      if (!solvers::has_solution(out.status)) {
        ok = false;
        detail = std::string(to_string(kind)) + " not feasible at W=6, seed " +
                 std::to_string(fx.seed);
      }
    }
  }
  ok = ok && used >= 4;
  report(4, "security-requirement infeasibility flip (W=12 vs W=6)", ok,
         detail.empty() ? std::to_string(used) + " seeds" : detail);
}

void criterion_5_resource_tiers() {
  harness::RunManifest manifest;
  manifest.experiment = "acceptance-tiers";
  manifest.gen = tier_base(5);
  manifest.alpha = 0.1;
  manifest.setup = default_setup();

  bool ok = true;
  std::string detail;
  for (auto kind : {harness::SolverKind::Iterative, harness::SolverKind::OneShot}) {
    manifest.setup.solvers = {kind};
    const auto table = harness::sweep_resources(manifest);
    double low_mean = -1.0, high_mean = -1.0;
    for (const auto& row : table.rows) {
      if (row[2] == "infeasible") {
        ok = false;
        detail = std::string(to_string(kind)) + " infeasible in tier " + row[0];
        continue;
      }
      if (row[0] == "low") low_mean = std::stod(row[3]);
      if (row[0] == "high") high_mean = std::stod(row[3]);
    }
    if (low_mean != 6.0) {
      ok = false;
      detail = std::string(to_string(kind)) + " low tier mean security " +
               (low_mean < 0 ? std::string("missing")
                             : harness::format_double(low_mean));
    }
    if (!(high_mean > low_mean)) {
      ok = false;
      detail = std::string(to_string(kind)) + " high tier not above low";
    }
  }

  // The low tier really is pinned: check per-cell security, not just means.
  auto params = tier_base(5);
  params.compute_budget_cycles = {656.0, 6000.0};
  params.battery_joules = {1.0e6, 2.0e6};
  const auto low = scenario::generate(params);
  const auto out = solvers::solve_iterative(low, 0.1);
  if (!solvers::has_solution(out.status)) {
    ok = false;
    detail = "low tier instance infeasible";
  } else {
    for (const auto& cell : out.report->per_ue_step.data()) {
      if (cell.security_bits != 6.0) {
        ok = false;
        detail = "low tier cell above the DES level";
      }
    }
  }
  report(5, "resource tiers: low pins security at 6, high exceeds it", ok, detail);
}

void criterion_6_descent_traces() {
  bool ok = true;
  std::string detail;
  int feasible = 0;
  const solvers::IterativeConfig config;
  for (std::uint64_t seed = 1000; feasible < 50 && seed < 1200; ++seed) {
    const auto s = scenario::generate(desk_params(seed, 3, 2));
    const auto out = solvers::solve_iterative(s, 0.4, config);
    if (!solvers::has_solution(out.status)) continue;
    ++feasible;
    for (std::size_t k = 1; k < out.trace.size(); ++k) {
      const double prev = out.trace[k - 1].objective;
      if (out.trace[k].objective > prev + 1e-9 * std::abs(prev)) {
        ok = false;
        detail = "trace rise at seed " + std::to_string(seed);
      }
    }
    // Termination: converged traces end with a sub-epsilon move, capped
    // traces end exactly at the iteration limit.
    if (out.status == SolveStatus::Feasible && out.trace.size() >= 2) {
      const double last = out.trace.back().objective;
      const double prev = out.trace[out.trace.size() - 2].objective;
      if (!(std::abs(last - prev) < config.epsilon)) {
        ok = false;
        detail = "feasible without epsilon stop at seed " + std::to_string(seed);
      }
    } else if (out.status == SolveStatus::IterationLimit &&
               static_cast<int>(out.trace.size()) != config.u_max) {
      ok = false;
      detail = "iteration-limit trace length off at seed " + std::to_string(seed);
    }
  }
  ok = ok && feasible >= 50;
  report(6, "iterative descent: 50 monotone traces with clean stops", ok,
         detail.empty() ? std::to_string(feasible) + " instances" : detail);
}

void criterion_7_battery_horizon() {
  const auto s = scenario::demo_depletion_scenario();
  const auto myopic = solvers::solve_exhaustive_myopic(s, 0.1);
  const auto iterative = solvers::solve_iterative(s, 0.1);
  // The myopic failure must land strictly before the final step.
  const bool ok = myopic.status == SolveStatus::Infeasible &&
                  myopic.infeasible_step.has_value() &&
                  *myopic.infeasible_step < s.horizon() - 1 &&
                  solvers::has_solution(iterative.status);
  std::string detail;
  if (myopic.infeasible_step) {
    detail = "myopic fails at step " + std::to_string(*myopic.infeasible_step) +
             " of " + std::to_string(s.horizon()) + ", iterative " +
             to_string(iterative.status);
  }
  report(7, "battery horizon effect on the depletion fixture", ok, detail);
}

void criterion_8_determinism() {
  harness::RunManifest manifest;
  manifest.experiment = "acceptance-determinism";
  manifest.gen = tradeoff_params(kTradeoffSeed);
  manifest.setup = default_setup();
  manifest.alpha_grid = {0.1, 0.3, 0.5, 0.7, 0.9};
  const auto first = harness::sweep_alpha(manifest).to_csv();
  const auto second = harness::sweep_alpha(manifest).to_csv();
  report(8, "repeated sweep produces byte-identical CSV", first == second,
         std::to_string(first.size()) + " bytes");
}

}  // namespace

int main(int argc, char** argv) {
  const bool freeze = argc > 1 && std::strcmp(argv[1], "--freeze") == 0;
  if (freeze) {
    criterion_2_oracle_equivalence(true);
    criterion_3_tradeoff(true);
    return 0;
  }
  criterion_1_cycle_table();
  criterion_2_oracle_equivalence(false);
  criterion_3_tradeoff(false);
  criterion_4_requirement_infeasibility();
  criterion_5_resource_tiers();
  criterion_6_descent_traces();
  criterion_7_battery_horizon();
  criterion_8_determinism();
  return g_all_ok ? 0 : 1;
}
