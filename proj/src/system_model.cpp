#include "oranopt/system_model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace oranopt::model {

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& what) {
  throw std::invalid_argument(field + ": " + what);
}

void check_index(int value, int limit, const char* what) {
  if (value < 0 || value >= limit) {
    throw std::invalid_argument(std::string(what) + " index out of range: " +
                                std::to_string(value));
  }
}

}  // namespace

Scenario::Scenario(std::vector<UserEquipment> ues, std::vector<RadioUnit> orus,
                   int horizon, Grid3<double> rate_bps, double e_cp_watts,
                   double e_comm_watts, crypto::CycleCosts cycle_costs)
    : ues_(std::move(ues)),
      orus_(std::move(orus)),
      horizon_(horizon),
      rate_bps_(std::move(rate_bps)),
      e_cp_watts_(e_cp_watts),
      e_comm_watts_(e_comm_watts),
      cycle_costs_(cycle_costs),
      catalog_(crypto::catalog(cycle_costs)) {
  if (ues_.empty()) bad_field("ues", "must not be empty");
  if (orus_.empty()) bad_field("orus", "must not be empty");
  if (horizon_ < 1) bad_field("horizon", "must be >= 1");
  if (e_cp_watts_ <= 0.0) bad_field("e_cp_watts", "must be positive");
  if (e_comm_watts_ <= 0.0) bad_field("e_comm_watts", "must be positive");

  const double w_max = catalog_.back().security_bits;
  for (std::size_t i = 0; i < ues_.size(); ++i) {
    const auto& ue = ues_[i];
    const std::string tag = "ues[" + std::to_string(i) + "]";
    if (ue.clock_hz <= 0.0) bad_field(tag + ".clock_hz", "must be positive");
    if (ue.battery_joules <= 0.0) bad_field(tag + ".battery_joules", "must be positive");
    if (ue.compute_budget_cycles <= 0.0)
      bad_field(tag + ".compute_budget_cycles", "must be positive");
    if (static_cast<int>(ue.payload_bits.size()) != horizon_)
      bad_field(tag + ".payload_bits", "length must equal the horizon");
    for (std::int64_t p : ue.payload_bits) {
      if (p < 0) bad_field(tag + ".payload_bits", "entries must be >= 0");
    }
  }
  for (std::size_t j = 0; j < orus_.size(); ++j) {
    const auto& oru = orus_[j];
    const std::string tag = "orus[" + std::to_string(j) + "]";
    if (oru.clock_hz <= 0.0) bad_field(tag + ".clock_hz", "must be positive");
    if (oru.security_requirement_bits < 0.0)
      bad_field(tag + ".security_requirement_bits", "must be >= 0");
    if (oru.security_requirement_bits > w_max)
      bad_field(tag + ".security_requirement_bits",
                "exceeds the catalog maximum of " + std::to_string(w_max));
    if (oru.resource_blocks < 1) bad_field(tag + ".resource_blocks", "must be >= 1");
  }
  if (rate_bps_.dim0() != n_ues() || rate_bps_.dim1() != n_orus() ||
      rate_bps_.dim2() != horizon_) {
    bad_field("rate_bps", "dimensions must be n_ues x n_orus x horizon");
  }
  for (double r : rate_bps_.data()) {
    if (r <= 0.0) bad_field("rate_bps", "entries must be positive");
  }

  // Normalization bounds: the catalog security maximum and, per (ue, step),
  // the worst total latency over every (oru, option) pair.
  auto bounds = std::make_shared<NormalizationBounds>();
  bounds->security_max_bits = w_max;
  bounds->latency_max_s = Grid2<double>(n_ues(), horizon_, 0.0);
  for (int i = 0; i < n_ues(); ++i) {
    for (int t = 0; t < horizon_; ++t) {
      double worst = 0.0;
      for (int j = 0; j < n_orus(); ++j) {
        for (int g = 0; g < static_cast<int>(catalog_.size()); ++g) {
          const auto& opt = catalog_[g];
          const std::int64_t ct = ciphertext_bits(ues_[i].payload_bits[t], opt);
          const double lat = enc_latency_s(ues_[i].payload_bits[t], opt, ues_[i].clock_hz) +
                             comm_latency_s(ct, rate_bps_(i, j, t)) +
                             dec_latency_s(ct, opt, orus_[j].clock_hz);
          worst = std::max(worst, lat);
        }
      }
      bounds->latency_max_s(i, t) = worst;
      bounds->latency_global_max_s = std::max(bounds->latency_global_max_s, worst);
    }
  }
  bounds_ = std::move(bounds);
}

bool Scenario::operator==(const Scenario& other) const {
  return ues_ == other.ues_ && orus_ == other.orus_ &&
         horizon_ == other.horizon_ && rate_bps_ == other.rate_bps_ &&
         e_cp_watts_ == other.e_cp_watts_ &&
         e_comm_watts_ == other.e_comm_watts_ &&
         cycle_costs_ == other.cycle_costs_;
}

std::int64_t ciphertext_bits(std::int64_t plaintext_bits,
                             const crypto::CipherOption& option) {
  if (plaintext_bits < 0) {
    throw std::invalid_argument("plaintext_bits must be >= 0");
  }
  if (plaintext_bits == 0) return 0;
  const std::int64_t blocks =
      (plaintext_bits + option.block_bits - 1) / option.block_bits;
  return blocks * option.block_bits;
}

double comm_latency_s(std::int64_t ciphertext_bits, double rate_bps) {
  if (rate_bps <= 0.0) {
    throw std::invalid_argument("rate_bps must be positive");
  }
  if (ciphertext_bits < 0) {
    throw std::invalid_argument("ciphertext_bits must be >= 0");
  }
  return static_cast<double>(ciphertext_bits) / rate_bps;
}

double enc_latency_s(std::int64_t plaintext_bits,
                     const crypto::CipherOption& option, double ue_clock_hz) {
  if (ue_clock_hz <= 0.0) {
    throw std::invalid_argument("ue_clock_hz must be positive");
  }
  if (plaintext_bits < 0) {
    throw std::invalid_argument("plaintext_bits must be >= 0");
  }
  const std::int64_t blocks =
      (plaintext_bits + option.block_bits - 1) / option.block_bits;
  return static_cast<double>(option.enc_cycles_per_block) *
         static_cast<double>(blocks) / ue_clock_hz;
}

double dec_latency_s(std::int64_t ciphertext_bits,
                     const crypto::CipherOption& option, double oru_clock_hz) {
  if (oru_clock_hz <= 0.0) {
    throw std::invalid_argument("oru_clock_hz must be positive");
  }
  if (ciphertext_bits < 0 || ciphertext_bits % option.block_bits != 0) {
    throw std::invalid_argument("ciphertext_bits must be a nonnegative multiple of the block size");
  }
  const std::int64_t blocks = ciphertext_bits / option.block_bits;
  return static_cast<double>(option.dec_cycles_per_block) *
         static_cast<double>(blocks) / oru_clock_hz;
}

double total_latency_s(const Scenario& s, int ue, int oru, int option, int step) {
  check_index(ue, s.n_ues(), "ue");
  check_index(oru, s.n_orus(), "oru");
  check_index(option, static_cast<int>(s.catalog().size()), "option");
  check_index(step, s.horizon(), "step");
  const auto& opt = s.catalog()[option];
  const std::int64_t pt = s.ue(ue).payload_bits[step];
  const std::int64_t ct = ciphertext_bits(pt, opt);
  return enc_latency_s(pt, opt, s.ue(ue).clock_hz) +
         comm_latency_s(ct, s.rate_bps(ue, oru, step)) +
         dec_latency_s(ct, opt, s.oru(oru).clock_hz);
}

StepEnergy step_energy(const Scenario& s, int ue, int oru, int option, int step) {
  check_index(ue, s.n_ues(), "ue");
  check_index(oru, s.n_orus(), "oru");
  check_index(option, static_cast<int>(s.catalog().size()), "option");
  check_index(step, s.horizon(), "step");
  const auto& opt = s.catalog()[option];
  const std::int64_t pt = s.ue(ue).payload_bits[step];
  const std::int64_t ct = ciphertext_bits(pt, opt);
  StepEnergy e;
  e.compute_joules = enc_latency_s(pt, opt, s.ue(ue).clock_hz) * s.e_cp_watts();
  e.comm_joules = comm_latency_s(ct, s.rate_bps(ue, oru, step)) * s.e_comm_watts();
  return e;
}

}  // namespace oranopt::model
