#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "oranopt/crypto_cost.hpp"
#include "oranopt/grid.hpp"

namespace oranopt::model {

// A mobile device that encrypts and offloads a payload each time step.
struct UserEquipment {
  double clock_hz = 0.0;                   // processor clock speed
  double battery_joules = 0.0;             // energy budget over the horizon
  double compute_budget_cycles = 0.0;      // per-block cycle cap on the cipher
  std::vector<std::int64_t> payload_bits;  // plaintext size per time step

  bool operator==(const UserEquipment&) const = default;
};

// A radio unit a device can associate with.
struct RadioUnit {
  double clock_hz = 0.0;                  // processor clock speed
  double security_requirement_bits = 0.0; // minimum security level it accepts
  int resource_blocks = 0;                // devices it can serve per step

  bool operator==(const RadioUnit&) const = default;
};

// Per-cell and global maxima used to normalize the objective terms.
struct NormalizationBounds {
  double security_max_bits = 0.0;
  Grid2<double> latency_max_s;      // max total latency per (ue, step)
  double latency_global_max_s = 0.0;
};

// Immutable problem instance. Validates its invariants on construction and
// precomputes the normalization bounds, so instances are cheap to share
// across concurrent solver runs.
class Scenario {
 public:
  // Throws std::invalid_argument naming the offending field when any
  // invariant fails (dimensions, positivity, security requirement within
  // the catalog range).
  Scenario(std::vector<UserEquipment> ues, std::vector<RadioUnit> orus,
           int horizon, Grid3<double> rate_bps, double e_cp_watts,
           double e_comm_watts, crypto::CycleCosts cycle_costs = {});

  int n_ues() const { return static_cast<int>(ues_.size()); }
  int n_orus() const { return static_cast<int>(orus_.size()); }
  int horizon() const { return horizon_; }

  const std::vector<UserEquipment>& ues() const { return ues_; }
  const std::vector<RadioUnit>& orus() const { return orus_; }
  const UserEquipment& ue(int i) const { return ues_.at(i); }
  const RadioUnit& oru(int j) const { return orus_.at(j); }

  // Link rate in bits per second for (ue, oru, step).
  double rate_bps(int i, int j, int t) const { return rate_bps_(i, j, t); }
  const Grid3<double>& rate_table() const { return rate_bps_; }

  double e_cp_watts() const { return e_cp_watts_; }
  double e_comm_watts() const { return e_comm_watts_; }

  const crypto::CycleCosts& cycle_costs() const { return cycle_costs_; }
  const std::vector<crypto::CipherOption>& catalog() const { return catalog_; }

  const NormalizationBounds& norm_bounds() const { return *bounds_; }

  bool operator==(const Scenario& other) const;

 private:
  std::vector<UserEquipment> ues_;
  std::vector<RadioUnit> orus_;
  int horizon_ = 0;
  Grid3<double> rate_bps_;
  double e_cp_watts_ = 0.0;
  double e_comm_watts_ = 0.0;
  crypto::CycleCosts cycle_costs_;
  std::vector<crypto::CipherOption> catalog_;
  std::shared_ptr<const NormalizationBounds> bounds_;  // shared by copies
};

// Padded ciphertext size: plaintext rounded up to whole blocks. Zero maps
// to zero.
std::int64_t ciphertext_bits(std::int64_t plaintext_bits,
                             const crypto::CipherOption& option);

// Transmission delay of the ciphertext over a link. rate_bps must be > 0.
double comm_latency_s(std::int64_t ciphertext_bits, double rate_bps);

// Encryption delay on the device. ue_clock_hz must be > 0.
double enc_latency_s(std::int64_t plaintext_bits,
                     const crypto::CipherOption& option, double ue_clock_hz);

// Decryption delay on the radio unit. ciphertext_bits must be block-aligned
// and oru_clock_hz > 0.
double dec_latency_s(std::int64_t ciphertext_bits,
                     const crypto::CipherOption& option, double oru_clock_hz);

// Encrypt-transmit-decrypt delay for one (ue, oru, option, step) choice.
double total_latency_s(const Scenario& s, int ue, int oru, int option, int step);

struct StepEnergy {
  double compute_joules = 0.0;  // encryption on the device
  double comm_joules = 0.0;     // transmission
  double total() const { return compute_joules + comm_joules; }
};

// Device-side energy spent in one step. Decryption runs on the radio unit
// and costs the device nothing.
StepEnergy step_energy(const Scenario& s, int ue, int oru, int option, int step);

}  // namespace oranopt::model
