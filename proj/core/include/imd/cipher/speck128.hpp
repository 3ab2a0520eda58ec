#pragma once

#include <array>
#include <cstdint>

#include "imd/cipher/block_cipher.hpp"

namespace imd::cipher {

/// SPECK128/128: 64-bit words, 32 rounds, rotation amounts 8 and 3.
///
/// Byte convention follows the designers' reference code: words are
/// little-endian, the block is (y, x) and the key is (k0, l0). The published
/// vector key 0f0e..0100 / pt 6c61..6d20 therefore appears on the wire as
/// key 0001..0e0f / pt " made it equival".
class Speck128 final : public BlockCipher {
 public:
  static constexpr int kRounds = 32;

  explicit Speck128(const SymmetricKey& key);

  CipherId id() const override { return CipherId::Speck128_128; }
  void encrypt(const std::uint8_t* in, std::uint8_t* out) const override;
  void decrypt(const std::uint8_t* in, std::uint8_t* out) const override;

 private:
  std::array<std::uint64_t, kRounds> round_keys_{};
};

}  // namespace imd::cipher
