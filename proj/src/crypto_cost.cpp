#include "oranopt/crypto_cost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace oranopt::crypto {

namespace {

void require_pair(AlgorithmId algorithm, std::int64_t key_bits) {
  const auto& keys = valid_key_bits(algorithm);
  if (std::find(keys.begin(), keys.end(), key_bits) == keys.end()) {
    throw std::invalid_argument("unsupported key length " +
                                std::to_string(key_bits) + " for " +
                                to_string(algorithm));
  }
}

}  // namespace

const char* to_string(AlgorithmId algorithm) {
  switch (algorithm) {
    case AlgorithmId::DES: return "DES";
    case AlgorithmId::AES: return "AES";
    case AlgorithmId::RSA: return "RSA";
  }
  return "?";
}

const std::vector<std::int64_t>& valid_key_bits(AlgorithmId algorithm) {
  static const std::vector<std::int64_t> des{64};
  static const std::vector<std::int64_t> aes{128, 192, 256};
  static const std::vector<std::int64_t> rsa{1024, 2048, 3072, 4096};
  switch (algorithm) {
    case AlgorithmId::DES: return des;
    case AlgorithmId::AES: return aes;
    case AlgorithmId::RSA: return rsa;
  }
  throw std::invalid_argument("unknown algorithm id");
}

std::int64_t rounds_for(AlgorithmId algorithm, std::int64_t key_bits) {
  require_pair(algorithm, key_bits);
  switch (algorithm) {
    case AlgorithmId::DES: return 16;
    case AlgorithmId::AES: return key_bits / 32 + 6;
    case AlgorithmId::RSA: return 1;
  }
  return 0;
}

std::int64_t block_bits_for(AlgorithmId algorithm, std::int64_t key_bits) {
  require_pair(algorithm, key_bits);
  switch (algorithm) {
    case AlgorithmId::DES: return 64;
    case AlgorithmId::AES: return 128;
    case AlgorithmId::RSA: return key_bits;  // one block per key length
  }
  return 0;
}

std::int64_t enc_cycles(AlgorithmId algorithm, std::int64_t key_bits,
                        const CycleCosts& costs) {
  require_pair(algorithm, key_bits);
  switch (algorithm) {
    case AlgorithmId::DES: {
      const std::int64_t rounds = 16;
      return 16 * costs.n_shift + rounds * (10 * costs.n_shift + 10 * costs.n_xor);
    }
    case AlgorithmId::AES: {
      const std::int64_t rounds = key_bits / 32 + 6;
      return 16 * costs.n_xor +
             (rounds - 1) * (184 * costs.n_and + 136 * costs.n_or + 352 * costs.n_shift) +
             (16 * costs.n_xor + 12 * costs.n_shift + 12 * costs.n_or);
    }
    case AlgorithmId::RSA:
      return key_bits * key_bits;
  }
  return 0;
}

std::int64_t dec_cycles(AlgorithmId algorithm, std::int64_t key_bits,
                        const CycleCosts& costs) {
  require_pair(algorithm, key_bits);
  if (algorithm == AlgorithmId::AES) {
    const std::int64_t rounds = key_bits / 32 + 6;
    return 16 * costs.n_xor +
           (rounds - 1) * (644 * costs.n_and + 500 * costs.n_or + 224 * costs.n_shift) +
           (16 * costs.n_xor + 12 * costs.n_shift + 12 * costs.n_or);
  }
  // DES and RSA cost the same in both directions.
  return enc_cycles(algorithm, key_bits, costs);
}

double security_level(std::int64_t key_bits) {
  if (key_bits < 1) {
    throw std::invalid_argument("key_bits must be >= 1");
  }
  return std::log2(static_cast<double>(key_bits));
}

CipherOption make_option(AlgorithmId algorithm, std::int64_t key_bits,
                         const CycleCosts& costs) {
  CipherOption opt;
  opt.algorithm = algorithm;
  opt.key_bits = key_bits;
  opt.block_bits = block_bits_for(algorithm, key_bits);
  opt.rounds = rounds_for(algorithm, key_bits);
  opt.enc_cycles_per_block = enc_cycles(algorithm, key_bits, costs);
  opt.dec_cycles_per_block = dec_cycles(algorithm, key_bits, costs);
  opt.security_bits = security_level(key_bits);
  return opt;
}

std::vector<CipherOption> catalog(const CycleCosts& costs) {
  std::vector<CipherOption> out;
  out.reserve(kCatalogSize);
  for (AlgorithmId a : {AlgorithmId::DES, AlgorithmId::AES, AlgorithmId::RSA}) {
    for (std::int64_t key : valid_key_bits(a)) {
      out.push_back(make_option(a, key, costs));
    }
  }
  return out;
}

}  // namespace oranopt::crypto
