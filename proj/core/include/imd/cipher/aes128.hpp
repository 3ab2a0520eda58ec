#pragma once

#include <array>
#include <cstdint>

#include "imd/cipher/block_cipher.hpp"

namespace imd::cipher {

/// AES-128 (FIPS-197). The S-box is derived at compile time from the
/// GF(2^8) inverse and affine map instead of being transcribed.
class Aes128 final : public BlockCipher {
 public:
  explicit Aes128(const SymmetricKey& key);

  CipherId id() const override { return CipherId::Aes128; }
  void encrypt(const std::uint8_t* in, std::uint8_t* out) const override;
  void decrypt(const std::uint8_t* in, std::uint8_t* out) const override;

 private:
  std::array<std::uint8_t, 176> round_keys_{};
};

}  // namespace imd::cipher
