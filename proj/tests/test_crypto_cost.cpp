#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "oranopt/crypto_cost.hpp"

using namespace oranopt::crypto;

namespace {

// Straight-line re-evaluation of the cycle formulas, kept independent of
// the library's implementation.
std::int64_t oracle_enc(AlgorithmId a, std::int64_t key) {
  const std::int64_t n_and = 1, n_or = 1, n_shift = 1, n_xor = 3;
  if (a == AlgorithmId::DES) {
    return 16 * n_shift + 16 * (10 * n_shift + 10 * n_xor);
  }
  if (a == AlgorithmId::AES) {
    const std::int64_t r = key / 32 + 6;
    return 16 * n_xor + (r - 1) * (184 * n_and + 136 * n_or + 352 * n_shift) +
           16 * n_xor + 12 * n_shift + 12 * n_or;
  }
  return key * key;
}

std::int64_t oracle_dec(AlgorithmId a, std::int64_t key) {
  const std::int64_t n_and = 1, n_or = 1, n_shift = 1, n_xor = 3;
  if (a == AlgorithmId::AES) {
    const std::int64_t r = key / 32 + 6;
    return 16 * n_xor + (r - 1) * (644 * n_and + 500 * n_or + 224 * n_shift) +
           16 * n_xor + 12 * n_shift + 12 * n_or;
  }
  return oracle_enc(a, key);
}

}  // namespace

TEST_CASE("catalog layout") {
  const auto cat = catalog();
  REQUIRE(cat.size() == 8);

  const std::int64_t expected_keys[] = {64, 128, 192, 256, 1024, 2048, 3072, 4096};
  for (int g = 0; g < 8; ++g) {
    CHECK(cat[g].key_bits == expected_keys[g]);
  }

  CHECK(cat[0].algorithm == AlgorithmId::DES);
  CHECK(cat[0].block_bits == 64);
  CHECK(cat[0].rounds == 16);
  CHECK(cat[1].algorithm == AlgorithmId::AES);
  CHECK(cat[1].block_bits == 128);
  CHECK(cat[5].algorithm == AlgorithmId::RSA);
  CHECK(cat[5].block_bits == 2048);
  CHECK(cat[5].rounds == 1);
}

TEST_CASE("AES round counts match the known schedule") {
  CHECK(rounds_for(AlgorithmId::AES, 128) == 10);
  CHECK(rounds_for(AlgorithmId::AES, 192) == 12);
  CHECK(rounds_for(AlgorithmId::AES, 256) == 14);
  CHECK(rounds_for(AlgorithmId::DES, 64) == 16);
  CHECK(rounds_for(AlgorithmId::RSA, 2048) == 1);
}

TEST_CASE("cycle counts: frozen regression table") {
  const CycleCosts defaults;
  struct Row {
    std::int64_t key;
    std::int64_t enc;
    std::int64_t dec;
  };
  // Each value recomputed by hand from the per-round formulas before being
  // frozen here.
  const Row table[] = {
      {64, 656, 656},           {128, 6168, 12432},
      {192, 7512, 15168},       {256, 8856, 17904},
      {1024, 1048576, 1048576}, {2048, 4194304, 4194304},
      {3072, 9437184, 9437184}, {4096, 16777216, 16777216},
  };
  const auto cat = catalog(defaults);
  for (int g = 0; g < 8; ++g) {
    CAPTURE(table[g].key);
    CHECK(cat[g].enc_cycles_per_block == table[g].enc);
    CHECK(cat[g].dec_cycles_per_block == table[g].dec);
    CHECK(cat[g].enc_cycles_per_block ==
          oracle_enc(cat[g].algorithm, cat[g].key_bits));
    CHECK(cat[g].dec_cycles_per_block ==
          oracle_dec(cat[g].algorithm, cat[g].key_bits));
  }
}

TEST_CASE("cycle counts respect injected primitive costs") {
  CycleCosts costs;
  costs.n_shift = 2;
  costs.n_xor = 5;
  // DES: 16*2 + 16*(10*2 + 10*5) = 1152.
  CHECK(enc_cycles(AlgorithmId::DES, 64, costs) == 1152);
  // RSA ignores the primitive cost table.
  CHECK(enc_cycles(AlgorithmId::RSA, 1024, costs) == 1024 * 1024);
}

TEST_CASE("cycle counts increase with key length within each algorithm") {
  const auto cat = catalog();
  for (std::size_t g = 1; g < cat.size(); ++g) {
    if (cat[g].algorithm != cat[g - 1].algorithm) continue;
    CHECK(cat[g].enc_cycles_per_block > cat[g - 1].enc_cycles_per_block);
    CHECK(cat[g].dec_cycles_per_block > cat[g - 1].dec_cycles_per_block);
  }
}

TEST_CASE("security level") {
  CHECK(security_level(64) == 6.0);
  CHECK(security_level(4096) == 12.0);
  CHECK(security_level(192) == doctest::Approx(7.5849625007).epsilon(1e-9));
  CHECK_THROWS_AS(security_level(0), std::invalid_argument);

  const auto cat = catalog();
  for (std::size_t g = 1; g < cat.size(); ++g) {
    CHECK(cat[g].security_bits > cat[g - 1].security_bits);
  }
}

TEST_CASE("catalog cycle extremes") {
  const auto cat = catalog();
  std::int64_t lo = cat.front().enc_cycles_per_block;
  std::int64_t hi = lo;
  for (const auto& opt : cat) {
    lo = std::min(lo, opt.enc_cycles_per_block);
    hi = std::max(hi, opt.enc_cycles_per_block);
  }
  CHECK(lo == 656);
  CHECK(hi == 16777216);
}

TEST_CASE("DES and RSA decrypt at the encryption cost") {
  const CycleCosts defaults;
  for (std::int64_t key : valid_key_bits(AlgorithmId::RSA)) {
    CHECK(enc_cycles(AlgorithmId::RSA, key, defaults) ==
          dec_cycles(AlgorithmId::RSA, key, defaults));
  }
  CHECK(enc_cycles(AlgorithmId::DES, 64, defaults) ==
        dec_cycles(AlgorithmId::DES, 64, defaults));
}

TEST_CASE("invalid algorithm and key pairings are rejected") {
  CHECK_THROWS_AS(enc_cycles(AlgorithmId::DES, 128, {}), std::invalid_argument);
  CHECK_THROWS_AS(enc_cycles(AlgorithmId::AES, 64, {}), std::invalid_argument);
  CHECK_THROWS_AS(dec_cycles(AlgorithmId::RSA, 512, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_option(AlgorithmId::AES, 100), std::invalid_argument);
}
