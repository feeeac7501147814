#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "oranopt/system_model.hpp"

namespace oranopt::scenario {

struct Range {
  double min = 0.0;
  double max = 0.0;

  bool operator==(const Range&) const = default;
};

// Generator inputs. Defaults: 3 radio units, 4 devices, 3 steps, capacity 3,
// security requirements over the full catalog span, link rates in
// [10, 100] bps, payloads in [50, 2e4] KB, and cycle budgets spanning the
// catalog's per-block costs.
struct GenParams {
  int n_ues = 4;
  int n_orus = 3;
  int horizon = 3;
  Range w_bits{6.0, 12.0};
  Range rate_bps{10.0, 100.0};
  Range payload_kb{50.0, 2.0e4};              // 1 KB = 8192 bits
  Range compute_budget_cycles{656.0, 1.7e7};
  Range ue_clock_hz{1.8e9, 2.4e9};
  Range oru_clock_hz{3.5e9, 3.9e9};
  Range battery_joules{460.0, 2.0e6};
  double e_cp_watts = 4.0;
  double e_comm_watts = 7.0;
  int resource_blocks = 3;
  std::uint64_t seed = 0;
  // Security requirements snap to the nearest catalog security level inside
  // the configured interval; disable to keep the raw continuous draw.
  bool snap_w_to_catalog = true;
  crypto::CycleCosts cycle_costs{};

  bool operator==(const GenParams&) const = default;
};

// Draws every quantity independently and uniformly from its range with a
// counter-based generator keyed by (seed, kind, indices), so identical
// params give bit-identical scenarios on any platform. Throws
// std::invalid_argument on empty ranges or when no catalog security level
// falls inside the w_bits interval.
model::Scenario generate(const GenParams& params);

inline constexpr int kSchemaVersion = 1;

// Scenario file round trip. The format is versioned JSON with explicit
// units in the field names; load() reports the offending field on any
// malformed or out-of-range value.
std::string to_json_text(const model::Scenario& s);
model::Scenario from_json_text(const std::string& text);
void save(const model::Scenario& s, const std::filesystem::path& path);
model::Scenario load(const std::filesystem::path& path);

// Hand-built single-device instance whose battery survives the horizon only
// if early steps hold back on cipher strength. Step-by-step solvers burn
// the battery on the strongest cipher and fail before the last step.
model::Scenario demo_depletion_scenario();

}  // namespace oranopt::scenario
