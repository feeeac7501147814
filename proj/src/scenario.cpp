#include "oranopt/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "oranopt/rng.hpp"

namespace oranopt::scenario {

namespace {

using nlohmann::json;

enum DrawKind : std::uint64_t {
  kDrawW = 1,
  kDrawRate = 2,
  kDrawPayload = 3,
  kDrawGamma = 4,
  kDrawUeClock = 5,
  kDrawOruClock = 6,
  kDrawBattery = 7,
};

void require_range(const Range& r, const char* name, double floor) {
  if (!(r.min <= r.max)) {
    throw std::invalid_argument(std::string(name) + ": min must be <= max");
  }
  if (!(r.min >= floor)) {
    throw std::invalid_argument(std::string(name) + ": values must be >= " +
                                std::to_string(floor));
  }
}

double draw(const GenParams& p, DrawKind kind, const Range& r,
            std::uint64_t a = 0, std::uint64_t b = 0, std::uint64_t c = 0) {
  return rng::uniform_in(r.min, r.max, p.seed, kind, a, b, c);
}

// ---- file format helpers ---------------------------------------------

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw std::runtime_error("scenario file: " + field + ": " + what);
}

const json& get_member(const json& obj, const std::string& field,
                       const std::string& path) {
  if (!obj.is_object()) field_error(path, "expected an object");
  auto it = obj.find(field);
  if (it == obj.end()) field_error(path + "." + field, "missing");
  return *it;
}

double get_number(const json& obj, const std::string& field,
                  const std::string& path) {
  const json& v = get_member(obj, field, path);
  if (!v.is_number()) field_error(path + "." + field, "expected a number");
  return v.get<double>();
}

std::int64_t get_int(const json& obj, const std::string& field,
                     const std::string& path) {
  const json& v = get_member(obj, field, path);
  if (!v.is_number_integer()) field_error(path + "." + field, "expected an integer");
  return v.get<std::int64_t>();
}

}  // namespace

model::Scenario generate(const GenParams& p) {
  if (p.n_ues < 1) throw std::invalid_argument("n_ues: must be >= 1");
  if (p.n_orus < 1) throw std::invalid_argument("n_orus: must be >= 1");
  if (p.horizon < 1) throw std::invalid_argument("horizon: must be >= 1");
  if (p.resource_blocks < 1) throw std::invalid_argument("resource_blocks: must be >= 1");
  require_range(p.w_bits, "w_bits", 0.0);
  require_range(p.rate_bps, "rate_bps", 0.0);
  require_range(p.payload_kb, "payload_kb", 0.0);
  require_range(p.compute_budget_cycles, "compute_budget_cycles", 0.0);
  require_range(p.ue_clock_hz, "ue_clock_hz", 0.0);
  require_range(p.oru_clock_hz, "oru_clock_hz", 0.0);
  require_range(p.battery_joules, "battery_joules", 0.0);
  if (p.rate_bps.min <= 0.0) throw std::invalid_argument("rate_bps: must be positive");
  if (p.ue_clock_hz.min <= 0.0) throw std::invalid_argument("ue_clock_hz: must be positive");
  if (p.oru_clock_hz.min <= 0.0) throw std::invalid_argument("oru_clock_hz: must be positive");
  if (p.battery_joules.min <= 0.0) throw std::invalid_argument("battery_joules: must be positive");
  if (p.compute_budget_cycles.min <= 0.0)
    throw std::invalid_argument("compute_budget_cycles: must be positive");

  // Catalog security levels admissible for the requirement draw.
  const auto options = crypto::catalog(p.cycle_costs);
  std::vector<double> levels;
  for (const auto& opt : options) {
    if (opt.security_bits >= p.w_bits.min && opt.security_bits <= p.w_bits.max) {
      levels.push_back(opt.security_bits);
    }
  }
  if (p.snap_w_to_catalog && levels.empty()) {
    throw std::invalid_argument(
        "w_bits: no catalog security level falls inside the interval");
  }

  std::vector<model::RadioUnit> orus(p.n_orus);
  for (int j = 0; j < p.n_orus; ++j) {
    double w = draw(p, kDrawW, p.w_bits, j);
    if (p.snap_w_to_catalog) {
      double best = levels.front();
      for (double lvl : levels) {
        if (std::abs(lvl - w) < std::abs(best - w)) best = lvl;
      }
      w = best;
    }
    orus[j].security_requirement_bits = w;
    orus[j].clock_hz = draw(p, kDrawOruClock, p.oru_clock_hz, j);
    orus[j].resource_blocks = p.resource_blocks;
  }

  std::vector<model::UserEquipment> ues(p.n_ues);
  for (int i = 0; i < p.n_ues; ++i) {
    ues[i].clock_hz = draw(p, kDrawUeClock, p.ue_clock_hz, i);
    ues[i].battery_joules = draw(p, kDrawBattery, p.battery_joules, i);
    ues[i].compute_budget_cycles = draw(p, kDrawGamma, p.compute_budget_cycles, i);
    ues[i].payload_bits.resize(p.horizon);
    for (int t = 0; t < p.horizon; ++t) {
      const double kb = draw(p, kDrawPayload, p.payload_kb, i, t);
      ues[i].payload_bits[t] = std::llround(kb * 8192.0);  // 1 KB = 8192 bits
    }
  }

  Grid3<double> rates(p.n_ues, p.n_orus, p.horizon);
  for (int i = 0; i < p.n_ues; ++i) {
    for (int j = 0; j < p.n_orus; ++j) {
      for (int t = 0; t < p.horizon; ++t) {
        rates(i, j, t) = draw(p, kDrawRate, p.rate_bps, i, j, t);
      }
    }
  }

  return model::Scenario(std::move(ues), std::move(orus), p.horizon,
                         std::move(rates), p.e_cp_watts, p.e_comm_watts,
                         p.cycle_costs);
}

std::string to_json_text(const model::Scenario& s) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["horizon_steps"] = s.horizon();
  doc["e_cp_watts"] = s.e_cp_watts();
  doc["e_comm_watts"] = s.e_comm_watts();
  doc["cycle_costs"] = {{"n_and", s.cycle_costs().n_and},
                        {"n_or", s.cycle_costs().n_or},
                        {"n_shift", s.cycle_costs().n_shift},
                        {"n_xor", s.cycle_costs().n_xor}};
  doc["ues"] = json::array();
  for (const auto& ue : s.ues()) {
    doc["ues"].push_back({{"clock_hz", ue.clock_hz},
                          {"battery_joules", ue.battery_joules},
                          {"compute_budget_cycles", ue.compute_budget_cycles},
                          {"payload_bits", ue.payload_bits}});
  }
  doc["orus"] = json::array();
  for (const auto& oru : s.orus()) {
    doc["orus"].push_back(
        {{"clock_hz", oru.clock_hz},
         {"security_requirement_bits", oru.security_requirement_bits},
         {"resource_blocks", oru.resource_blocks}});
  }
  json rates = json::array();
  for (int i = 0; i < s.n_ues(); ++i) {
    json per_oru = json::array();
    for (int j = 0; j < s.n_orus(); ++j) {
      json per_step = json::array();
      for (int t = 0; t < s.horizon(); ++t) {
        per_step.push_back(s.rate_bps(i, j, t));
      }
      per_oru.push_back(std::move(per_step));
    }
    rates.push_back(std::move(per_oru));
  }
  doc["rate_bps"] = std::move(rates);
  return doc.dump(2) + "\n";
}

model::Scenario from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("scenario file: not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) field_error("(root)", "expected an object");

  const std::int64_t version = get_int(doc, "schema_version", "(root)");
  if (version != kSchemaVersion) {
    throw std::runtime_error("scenario file: schema_version: expected " +
                             std::to_string(kSchemaVersion) + ", found " +
                             std::to_string(version));
  }

  const int horizon = static_cast<int>(get_int(doc, "horizon_steps", "(root)"));
  const double e_cp = get_number(doc, "e_cp_watts", "(root)");
  const double e_comm = get_number(doc, "e_comm_watts", "(root)");

  crypto::CycleCosts costs;
  if (doc.contains("cycle_costs")) {
    const json& cc = doc["cycle_costs"];
    costs.n_and = get_int(cc, "n_and", "cycle_costs");
    costs.n_or = get_int(cc, "n_or", "cycle_costs");
    costs.n_shift = get_int(cc, "n_shift", "cycle_costs");
    costs.n_xor = get_int(cc, "n_xor", "cycle_costs");
  }

  const json& jues = get_member(doc, "ues", "(root)");
  if (!jues.is_array() || jues.empty()) field_error("ues", "expected a non-empty array");
  std::vector<model::UserEquipment> ues;
  for (std::size_t i = 0; i < jues.size(); ++i) {
    const std::string path = "ues[" + std::to_string(i) + "]";
    const json& ju = jues[i];
    model::UserEquipment ue;
    ue.clock_hz = get_number(ju, "clock_hz", path);
    ue.battery_joules = get_number(ju, "battery_joules", path);
    ue.compute_budget_cycles = get_number(ju, "compute_budget_cycles", path);
    const bool has_bits = ju.is_object() && ju.contains("payload_bits");
    const bool has_kb = ju.is_object() && ju.contains("payload_kb");
    if (has_bits && has_kb) {
      field_error(path, "give payload_bits or payload_kb, not both");
    }
    if (!has_bits && !has_kb) {
      field_error(path + ".payload_bits", "missing");
    }
    const json& arr = has_bits ? ju["payload_bits"] : ju["payload_kb"];
    const std::string field = has_bits ? ".payload_bits" : ".payload_kb";
    if (!arr.is_array()) field_error(path + field, "expected an array");
    for (std::size_t t = 0; t < arr.size(); ++t) {
      const json& v = arr[t];
      if (!v.is_number()) field_error(path + field, "entries must be numbers");
      if (has_bits) {
        if (!v.is_number_integer()) field_error(path + field, "entries must be integers");
        ue.payload_bits.push_back(v.get<std::int64_t>());
      } else {
        ue.payload_bits.push_back(std::llround(v.get<double>() * 8192.0));
      }
    }
    ues.push_back(std::move(ue));
  }

  const json& jorus = get_member(doc, "orus", "(root)");
  if (!jorus.is_array() || jorus.empty()) field_error("orus", "expected a non-empty array");
  std::vector<model::RadioUnit> orus;
  for (std::size_t j = 0; j < jorus.size(); ++j) {
    const std::string path = "orus[" + std::to_string(j) + "]";
    model::RadioUnit oru;
    oru.clock_hz = get_number(jorus[j], "clock_hz", path);
    oru.security_requirement_bits =
        get_number(jorus[j], "security_requirement_bits", path);
    oru.resource_blocks = static_cast<int>(get_int(jorus[j], "resource_blocks", path));
    orus.push_back(oru);
  }

  const json& jrates = get_member(doc, "rate_bps", "(root)");
  if (!jrates.is_array() || jrates.size() != ues.size()) {
    field_error("rate_bps", "expected one row per ue");
  }
  Grid3<double> rates(static_cast<int>(ues.size()), static_cast<int>(orus.size()),
                      horizon);
  for (std::size_t i = 0; i < jrates.size(); ++i) {
    const json& row = jrates[i];
    if (!row.is_array() || row.size() != orus.size()) {
      field_error("rate_bps[" + std::to_string(i) + "]", "expected one entry per oru");
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      const json& col = row[j];
      if (!col.is_array() || static_cast<int>(col.size()) != horizon) {
        field_error("rate_bps[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                    "expected one entry per step");
      }
      for (int t = 0; t < horizon; ++t) {
        if (!col[t].is_number()) {
          field_error("rate_bps[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                      "entries must be numbers");
        }
        rates(static_cast<int>(i), static_cast<int>(j), t) = col[t].get<double>();
      }
    }
  }

  try {
    return model::Scenario(std::move(ues), std::move(orus), horizon,
                           std::move(rates), e_cp, e_comm, costs);
  } catch (const std::invalid_argument& e) {
    // Re-tag semantic violations as file errors; the message already names
    // the field.
    throw std::runtime_error(std::string("scenario file: ") + e.what());
  }
}

void save(const model::Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  out << to_json_text(s);
  if (!out) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

model::Scenario load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

model::Scenario demo_depletion_scenario() {
  // One device, one radio unit, five equal payloads of 4096 bits. The
  // battery covers three strongest-cipher steps but not four, while the
  // cheapest cipher schedule costs well under half the budget.
  model::UserEquipment ue;
  ue.clock_hz = 1.0e6;
  ue.battery_joules = 225.0;
  ue.compute_budget_cycles = 1.7e7;
  ue.payload_bits.assign(5, 4096);

  model::RadioUnit oru;
  oru.clock_hz = 1.0e6;
  oru.security_requirement_bits = 6.0;
  oru.resource_blocks = 1;

  Grid3<double> rates(1, 1, 5, 4096.0);
  return model::Scenario({ue}, {oru}, 5, std::move(rates), 4.0, 7.0);
}

}  // namespace oranopt::scenario
