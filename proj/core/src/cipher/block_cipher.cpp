#include "imd/cipher/block_cipher.hpp"

#include <algorithm>
#include <string>

#include "imd/cipher/aes128.hpp"
#include "imd/cipher/misty1.hpp"
#include "imd/cipher/speck128.hpp"
#include "imd/common/errors.hpp"

namespace imd::cipher {

std::string_view to_string(CipherId id) {
  switch (id) {
    case CipherId::Speck128_128: return "SPECK128_128";
    case CipherId::Misty1: return "MISTY1";
    case CipherId::Aes128: return "AES128";
  }
  return "?";
}

std::string_view to_string(ExecutionTarget target) {
  return target == ExecutionTarget::Cpu ? "CPU" : "CryptoPeripheral";
}

std::optional<CipherId> parse_cipher(std::string_view name) {
  for (auto id : kAllCiphers) {
    if (name == to_string(id)) return id;
  }
  if (name == "SPECK" || name == "speck") return CipherId::Speck128_128;
  if (name == "misty1") return CipherId::Misty1;
  if (name == "AES" || name == "aes" || name == "aes128") return CipherId::Aes128;
  return std::nullopt;
}

std::optional<ExecutionTarget> parse_target(std::string_view name) {
  if (name == "CPU" || name == "cpu") return ExecutionTarget::Cpu;
  if (name == "CryptoPeripheral" || name == "peripheral") return ExecutionTarget::CryptoPeripheral;
  return std::nullopt;
}

CipherSuite::CipherSuite(CipherId cipher, ExecutionTarget target) : cipher_(cipher), target_(target) {
  if (target == ExecutionTarget::CryptoPeripheral && cipher != CipherId::Aes128) {
    throw ArgumentError("the crypto peripheral only runs AES128, not " + std::string(to_string(cipher)));
  }
}

std::string CipherSuite::name() const {
  return std::string(to_string(cipher_)) + "/" + std::string(to_string(target_));
}

CipherSuite CipherSuite::parse(std::string_view text) {
  auto slash = text.find('/');
  auto cipher = parse_cipher(text.substr(0, slash));
  auto target = slash == std::string_view::npos ? std::optional(ExecutionTarget::Cpu)
                                                : parse_target(text.substr(slash + 1));
  if (!cipher || !target) throw ArgumentError("unknown cipher suite '" + std::string(text) + "'");
  return CipherSuite(*cipher, *target);
}

SymmetricKey SymmetricKey::from_bytes(ByteView bytes) {
  return SymmetricKey(to_array<kSize>(bytes));
}

SymmetricKey SymmetricKey::random(Rng& rng) {
  std::array<std::uint8_t, kSize> k{};
  rng.fill(k);
  return SymmetricKey(k);
}

std::unique_ptr<BlockCipher> BlockCipher::create(CipherId id, const SymmetricKey& key) {
  switch (id) {
    case CipherId::Speck128_128: return std::make_unique<Speck128>(key);
    case CipherId::Misty1: return std::make_unique<Misty1>(key);
    case CipherId::Aes128: return std::make_unique<Aes128>(key);
  }
  throw ArgumentError("unknown cipher id");
}

namespace {

void require_block(CipherId cipher, ByteView block) {
  if (block.size() != block_size(cipher)) {
    throw LengthError(std::string(to_string(cipher)) + " block must be " + std::to_string(block_size(cipher)) +
                      " bytes, got " + std::to_string(block.size()));
  }
}

}  // namespace

Bytes encrypt_block(CipherId cipher, const SymmetricKey& key, ByteView block) {
  require_block(cipher, block);
  Bytes out(block.size());
  BlockCipher::create(cipher, key)->encrypt(block.data(), out.data());
  return out;
}

Bytes decrypt_block(CipherId cipher, const SymmetricKey& key, ByteView block) {
  require_block(cipher, block);
  Bytes out(block.size());
  BlockCipher::create(cipher, key)->decrypt(block.data(), out.data());
  return out;
}

Bytes seal_token(CipherId cipher, const SymmetricKey& key, ByteView plaintext) {
  if (plaintext.empty()) throw ArgumentError("cannot seal an empty token");
  const auto bs = block_size(cipher);
  Bytes out(padded_length(cipher, plaintext.size()), 0);
  std::copy(plaintext.begin(), plaintext.end(), out.begin());

  auto bc = BlockCipher::create(cipher, key);
  Bytes chain(bs, 0);
  for (std::size_t off = 0; off < out.size(); off += bs) {
    for (std::size_t i = 0; i < bs; ++i) out[off + i] ^= chain[i];
    bc->encrypt(&out[off], &out[off]);
    std::copy_n(&out[off], bs, chain.begin());
  }
  return out;
}

Bytes open_token(CipherId cipher, const SymmetricKey& key, ByteView ciphertext) {
  const auto bs = block_size(cipher);
  if (ciphertext.empty() || ciphertext.size() % bs != 0) {
    throw LengthError("sealed token length " + std::to_string(ciphertext.size()) +
                      " is not a positive multiple of " + std::to_string(bs));
  }
  auto bc = BlockCipher::create(cipher, key);
  Bytes out(ciphertext.size());
  for (std::size_t off = 0; off < ciphertext.size(); off += bs) {
    bc->decrypt(&ciphertext[off], &out[off]);
    if (off >= bs) {
      for (std::size_t i = 0; i < bs; ++i) out[off + i] ^= ciphertext[off - bs + i];
    }
  }
  return out;
}

}  // namespace imd::cipher
