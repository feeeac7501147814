#pragma once

#include <cstdint>
#include <vector>

namespace oranopt::crypto {

// The three supported cipher families. Order is fixed so iteration over the
// catalog is deterministic.
enum class AlgorithmId { DES = 0, AES = 1, RSA = 2 };

const char* to_string(AlgorithmId algorithm);

// Clock cycles consumed by one primitive ALU operation. Defaults follow a
// plain x86 cost table (and / or / shift at one cycle, xor at three).
struct CycleCosts {
  std::int64_t n_and = 1;
  std::int64_t n_or = 1;
  std::int64_t n_shift = 1;
  std::int64_t n_xor = 3;

  bool operator==(const CycleCosts&) const = default;
};

// One (algorithm, key length) entry of the consolidated cipher catalog.
// Key lengths are disjoint across algorithms, so key_bits alone identifies
// an option.
struct CipherOption {
  AlgorithmId algorithm;
  std::int64_t key_bits;
  std::int64_t block_bits;
  std::int64_t rounds;
  std::int64_t enc_cycles_per_block;
  std::int64_t dec_cycles_per_block;
  double security_bits;  // log2(key_bits)

  bool operator==(const CipherOption&) const = default;
};

// Key lengths accepted for an algorithm: 64 for DES; 128/192/256 for AES;
// 1024/2048/3072/4096 for RSA.
const std::vector<std::int64_t>& valid_key_bits(AlgorithmId algorithm);

std::int64_t rounds_for(AlgorithmId algorithm, std::int64_t key_bits);
std::int64_t block_bits_for(AlgorithmId algorithm, std::int64_t key_bits);

// Cycles to encrypt or decrypt a single block. DES and RSA cost the same in
// both directions; AES decryption is more expensive than encryption.
// Throws std::invalid_argument on an unsupported (algorithm, key_bits) pair.
std::int64_t enc_cycles(AlgorithmId algorithm, std::int64_t key_bits,
                        const CycleCosts& costs);
std::int64_t dec_cycles(AlgorithmId algorithm, std::int64_t key_bits,
                        const CycleCosts& costs);

// Brute-force difficulty proxy: log2 of the key length in bits.
double security_level(std::int64_t key_bits);

// Builds one option per (algorithm, key length) pair.
CipherOption make_option(AlgorithmId algorithm, std::int64_t key_bits,
                         const CycleCosts& costs = {});

inline constexpr int kCatalogSize = 8;

// The full eight-option catalog, ascending by key length:
// DES-64, AES-128/192/256, RSA-1024/2048/3072/4096.
std::vector<CipherOption> catalog(const CycleCosts& costs = {});

}  // namespace oranopt::crypto
