#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>

#include "imd/common/bytes.hpp"
#include "imd/common/rng.hpp"

namespace imd::cipher {

enum class CipherId : std::uint8_t {
  Speck128_128,  // 128-bit block, 128-bit key
  Misty1,        // 64-bit block, 128-bit key
  Aes128,        // 128-bit block, 128-bit key
};

inline constexpr std::array<CipherId, 3> kAllCiphers = {CipherId::Speck128_128, CipherId::Misty1,
                                                        CipherId::Aes128};

// Where the cipher runs. Functional output is identical; only the energy
// cost class differs.
enum class ExecutionTarget : std::uint8_t {
  Cpu,
  CryptoPeripheral,  // AES128 only
};

constexpr std::size_t block_size(CipherId id) { return id == CipherId::Misty1 ? 8 : 16; }
constexpr std::size_t kKeySize = 16;

std::string_view to_string(CipherId id);
std::string_view to_string(ExecutionTarget target);
std::optional<CipherId> parse_cipher(std::string_view name);
std::optional<ExecutionTarget> parse_target(std::string_view name);

/// Cipher identity plus execution target. Construction rejects
/// CryptoPeripheral for anything but AES128.
class CipherSuite {
 public:
  CipherSuite(CipherId cipher, ExecutionTarget target);

  CipherId cipher() const { return cipher_; }
  ExecutionTarget target() const { return target_; }

  // "AES128/CryptoPeripheral"
  std::string name() const;
  // Inverse of name(); throws ArgumentError.
  static CipherSuite parse(std::string_view text);

  friend bool operator==(const CipherSuite&, const CipherSuite&) = default;

 private:
  CipherId cipher_;
  ExecutionTarget target_;
};

/// 128-bit symmetric key.
class SymmetricKey {
 public:
  static constexpr std::size_t kSize = kKeySize;

  explicit SymmetricKey(const std::array<std::uint8_t, kSize>& bytes) : bytes_(bytes) {}
  // Throws LengthError unless exactly 16 bytes.
  static SymmetricKey from_bytes(ByteView bytes);
  static SymmetricKey random(Rng& rng);

  const std::array<std::uint8_t, kSize>& bytes() const { return bytes_; }

  friend bool operator==(const SymmetricKey&, const SymmetricKey&) = default;

 private:
  std::array<std::uint8_t, kSize> bytes_;
};

/// Keyed block cipher. The key schedule runs once at construction.
class BlockCipher {
 public:
  virtual ~BlockCipher() = default;

  virtual CipherId id() const = 0;
  std::size_t block_size() const { return cipher::block_size(id()); }

  // `in` and `out` are exactly one block; they may alias.
  virtual void encrypt(const std::uint8_t* in, std::uint8_t* out) const = 0;
  virtual void decrypt(const std::uint8_t* in, std::uint8_t* out) const = 0;

  static std::unique_ptr<BlockCipher> create(CipherId id, const SymmetricKey& key);
};

// Single-block operations. Throw LengthError when `block` is not one block.
Bytes encrypt_block(CipherId cipher, const SymmetricKey& key, ByteView block);
Bytes decrypt_block(CipherId cipher, const SymmetricKey& key, ByteView block);

// Length of `plaintext_len` bytes after zero-padding to the block multiple.
constexpr std::size_t padded_length(CipherId cipher, std::size_t plaintext_len) {
  const auto b = block_size(cipher);
  return (plaintext_len + b - 1) / b * b;
}

/// CBC with an all-zero IV over the zero-padded plaintext. Throws
/// ArgumentError on empty input.
Bytes seal_token(CipherId cipher, const SymmetricKey& key, ByteView plaintext);

/// CBC-decrypt with zero IV. Returns the padded plaintext; the caller strips
/// padding using its fixed layout. Throws LengthError unless the ciphertext
/// is a positive multiple of the block size.
Bytes open_token(CipherId cipher, const SymmetricKey& key, ByteView ciphertext);

}  // namespace imd::cipher
