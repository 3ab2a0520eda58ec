#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <variant>

#include "imd/cipher/block_cipher.hpp"
#include "imd/common/bytes.hpp"

namespace imd::map {

using Nonce = std::array<std::uint8_t, 8>;
using Command = std::array<std::uint8_t, 4>;
using Response = std::array<std::uint8_t, 8>;
using DeviceId = std::array<std::uint8_t, 4>;

// Wire layout, big-endian, no length prefix:
//   M1 REQUEST    [0x01]
//   M2 CHALLENGE  [0x02][N_I: 8]
//   M3 TOKEN2     [0x03][seal(N_R || N_I || ID || Command)]
//   M4 TOKEN3     [0x04][seal(Response || N_I || N_R)]
// Sealed tokens are 24 bytes of plaintext padded to the cipher block size,
// so the receiver derives every length from (type, cipher).
enum class MessageType : std::uint8_t {
  Request = 0x01,
  Challenge = 0x02,
  Token2 = 0x03,
  Token3 = 0x04,
};

inline constexpr std::size_t kTokenPlaintextSize = 24;

struct Request {
  friend bool operator==(const Request&, const Request&) = default;
};

struct Challenge {
  Nonce implant_nonce{};
  friend bool operator==(const Challenge&, const Challenge&) = default;
};

struct Token2 {
  Bytes sealed;
  friend bool operator==(const Token2&, const Token2&) = default;
};

struct Token3 {
  Bytes sealed;
  friend bool operator==(const Token3&, const Token3&) = default;
};

using Message = std::variant<Request, Challenge, Token2, Token3>;

MessageType type_of(const Message& msg);

Bytes encode_message(const Message& msg);

// Throws DecodeError on an unknown type byte, or a length that does not
// match what (type, cipher) implies.
Message decode_message(ByteView wire, cipher::CipherId cipher);

std::size_t sealed_token_size(cipher::CipherId cipher);
std::size_t message_size(MessageType type, cipher::CipherId cipher);

// Over-the-air bits of M1..M4 for one honest session.
std::size_t transcript_bits(cipher::CipherId cipher);

// Implant-side accounting used by the energy model.
std::size_t implant_tx_bits(cipher::CipherId cipher);  // M2 + M4
std::size_t implant_rx_bits(cipher::CipherId cipher);  // M1 + M3
std::size_t implant_block_operations(cipher::CipherId cipher);  // open token2 + seal token3

}  // namespace imd::map
