#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "oranopt/rng.hpp"
#include "oranopt/system_model.hpp"

using namespace oranopt;
using namespace oranopt::model;

namespace {

const std::vector<crypto::CipherOption>& cat() {
  static const auto c = crypto::catalog();
  return c;
}

// Single-link scenario used across these tests.
Scenario tiny_scenario(std::int64_t payload_bits, double q_hz, double p_hz,
                       double rate) {
  UserEquipment ue{q_hz, 1e12, 1.7e7, {payload_bits}};
  RadioUnit oru{p_hz, 0.0, 1};
  Grid3<double> rates(1, 1, 1, rate);
  return Scenario({ue}, {oru}, 1, std::move(rates), 4.0, 7.0);
}

}  // namespace

TEST_CASE("ciphertext padding") {
  CHECK(ciphertext_bits(64, cat()[0]) == 64);    // one DES block exactly
  CHECK(ciphertext_bits(65, cat()[0]) == 128);   // spills into a second block
  CHECK(ciphertext_bits(409600, cat()[4]) == 409600);  // 400 RSA-1024 blocks
  CHECK(ciphertext_bits(0, cat()[1]) == 0);

  // Padding never reaches a full block.
  for (int trial = 0; trial < 500; ++trial) {
    const auto pt = static_cast<std::int64_t>(rng::uniform01(1, 1, trial) * 1e6);
    const auto& opt = cat()[rng::hash_counter(1, 2, trial) % 8];
    const auto ct = ciphertext_bits(pt, opt);
    CHECK(ct >= pt);
    CHECK(ct - pt < opt.block_bits);
    CHECK(ct % opt.block_bits == 0);
  }
}

TEST_CASE("communication latency") {
  CHECK(comm_latency_s(100, 10.0) == 10.0);
  CHECK(comm_latency_s(0, 50.0) == 0.0);
  CHECK(comm_latency_s(409600, 100.0) == 4096.0);
  CHECK_THROWS_AS(comm_latency_s(10, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(comm_latency_s(10, -1.0), std::invalid_argument);
}

TEST_CASE("encryption latency") {
  CHECK(enc_latency_s(64, cat()[0], 656.0) == 1.0);
  CHECK(enc_latency_s(128, cat()[1], 2.0e9) ==
        doctest::Approx(3.084e-6).epsilon(1e-12));
  CHECK(enc_latency_s(0, cat()[1], 2.0e9) == 0.0);
  CHECK_THROWS_AS(enc_latency_s(64, cat()[0], 0.0), std::invalid_argument);
}

TEST_CASE("decryption latency") {
  CHECK(dec_latency_s(128, cat()[1], 4.0e9) ==
        doctest::Approx(3.108e-6).epsilon(1e-12));
  CHECK(dec_latency_s(64, cat()[0], 656.0) == 1.0);
  CHECK(dec_latency_s(2048, cat()[5], 4194304.0) == 1.0);
  // Misaligned ciphertext is rejected.
  CHECK_THROWS_AS(dec_latency_s(100, cat()[0], 1e9), std::invalid_argument);
}

TEST_CASE("total latency") {
  // AES-128 link: 6168/2e9 + 128/128 + 12432/4e9.
  const auto s = tiny_scenario(128, 2.0e9, 4.0e9, 128.0);
  CHECK(total_latency_s(s, 0, 0, 1, 0) ==
        doctest::Approx(1.000006192).epsilon(1e-9));

  const auto des = tiny_scenario(64, 656.0, 656.0, 64.0);
  CHECK(total_latency_s(des, 0, 0, 0, 0) == doctest::Approx(3.0).epsilon(1e-12));

  const auto empty = tiny_scenario(0, 2.0e9, 4.0e9, 128.0);
  for (int g = 0; g < 8; ++g) {
    CHECK(total_latency_s(empty, 0, 0, g, 0) == 0.0);
  }

  CHECK_THROWS_AS(total_latency_s(s, 1, 0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(total_latency_s(s, 0, 0, 9, 0), std::invalid_argument);
}

TEST_CASE("step energy") {
  // DES at a 656 Hz clock: one block costs exactly one second to encrypt.
  const auto s = tiny_scenario(64, 656.0, 656.0, 64.0);
  const auto e = step_energy(s, 0, 0, 0, 0);
  CHECK(e.compute_joules == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(e.comm_joules == doctest::Approx(7.0).epsilon(1e-12));

  const auto empty = tiny_scenario(0, 656.0, 656.0, 64.0);
  const auto e0 = step_energy(empty, 0, 0, 3, 0);
  CHECK(e0.compute_joules == 0.0);
  CHECK(e0.comm_joules == 0.0);
}

TEST_CASE("latency monotonicity") {
  for (int trial = 0; trial < 200; ++trial) {
    const auto pt = static_cast<std::int64_t>(rng::uniform01(7, 1, trial) * 1e6) + 1;
    const double q = rng::uniform_in(1e3, 1e9, 7, 2, trial);
    const double p = rng::uniform_in(1e3, 1e9, 7, 3, trial);
    const double rate = rng::uniform_in(1.0, 1e6, 7, 4, trial);
    const int g = static_cast<int>(rng::hash_counter(7, 5, trial) % 8);
    const auto& opt = cat()[g];

    auto latency = [&](std::int64_t pt_, double q_, double p_, double r_) {
      const auto ct = ciphertext_bits(pt_, opt);
      return enc_latency_s(pt_, opt, q_) + comm_latency_s(ct, r_) +
             dec_latency_s(ct, opt, p_);
    };

    const double base = latency(pt, q, p, rate);
    CHECK(latency(pt, q, p, rate * 2.0) <= base);
    CHECK(latency(pt, q * 2.0, p, rate) <= base);
    CHECK(latency(pt, q, p * 2.0, rate) <= base);
    CHECK(latency(pt + 1000, q, p, rate) >= base);
  }
}

TEST_CASE("scenario validation names the offending field") {
  UserEquipment ue{2e9, 100.0, 1e7, {64}};
  RadioUnit oru{3e9, 6.0, 1};
  Grid3<double> rates(1, 1, 1, 50.0);

  {
    auto bad = ue;
    bad.clock_hz = -1.0;
    CHECK_THROWS_WITH_AS(
        Scenario({bad}, {oru}, 1, rates, 4.0, 7.0),
        "ues[0].clock_hz: must be positive", std::invalid_argument);
  }
  {
    auto bad = oru;
    bad.security_requirement_bits = 13.0;
    CHECK_THROWS_AS(Scenario({ue}, {bad}, 1, rates, 4.0, 7.0),
                    std::invalid_argument);
  }
  {
    auto bad = ue;
    bad.payload_bits = {64, 64};  // horizon mismatch
    CHECK_THROWS_AS(Scenario({bad}, {oru}, 1, rates, 4.0, 7.0),
                    std::invalid_argument);
  }
  {
    Grid3<double> bad_rates(1, 1, 1, 0.0);
    CHECK_THROWS_AS(Scenario({ue}, {oru}, 1, bad_rates, 4.0, 7.0),
                    std::invalid_argument);
  }
}

TEST_CASE("normalization bounds cache") {
  const auto s = tiny_scenario(64, 656.0, 656.0, 64.0);
  const auto& b = s.norm_bounds();
  CHECK(b.security_max_bits == 12.0);
  // RSA-4096 dominates every other option on this link.
  CHECK(b.latency_max_s(0, 0) ==
        total_latency_s(s, 0, 0, 7, 0));

  const auto empty = tiny_scenario(0, 656.0, 656.0, 64.0);
  CHECK(empty.norm_bounds().latency_max_s(0, 0) == 0.0);
}
