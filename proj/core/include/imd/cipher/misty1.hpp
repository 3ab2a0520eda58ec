#pragma once

#include <array>
#include <cstdint>

#include "imd/cipher/block_cipher.hpp"

namespace imd::cipher {

/// MISTY1 (RFC 2994): 64-bit block, 128-bit key, 8 rounds with FL layers.
class Misty1 final : public BlockCipher {
 public:
  explicit Misty1(const SymmetricKey& key);

  CipherId id() const override { return CipherId::Misty1; }
  void encrypt(const std::uint8_t* in, std::uint8_t* out) const override;
  void decrypt(const std::uint8_t* in, std::uint8_t* out) const override;

 private:
  std::uint32_t fo(std::uint32_t in, int k) const;
  std::uint32_t fl(std::uint32_t in, int k) const;
  std::uint32_t fl_inv(std::uint32_t in, int k) const;

  // [0..7] the key words K_i, [8..15] the derived words K'_i.
  std::array<std::uint16_t, 16> ek_{};
};

}  // namespace imd::cipher
