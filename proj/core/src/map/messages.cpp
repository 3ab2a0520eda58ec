#include "imd/map/messages.hpp"

#include <algorithm>
#include <string>

#include "imd/common/errors.hpp"

namespace imd::map {

using cipher::CipherId;

MessageType type_of(const Message& msg) {
  return std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Request>) return MessageType::Request;
        else if constexpr (std::is_same_v<T, Challenge>) return MessageType::Challenge;
        else if constexpr (std::is_same_v<T, Token2>) return MessageType::Token2;
        else return MessageType::Token3;
      },
      msg);
}

Bytes encode_message(const Message& msg) {
  Bytes out{static_cast<std::uint8_t>(type_of(msg))};
  std::visit(
      [&out](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Challenge>) {
          out.insert(out.end(), m.implant_nonce.begin(), m.implant_nonce.end());
        } else if constexpr (std::is_same_v<T, Token2> || std::is_same_v<T, Token3>) {
          out.insert(out.end(), m.sealed.begin(), m.sealed.end());
        }
      },
      msg);
  return out;
}

std::size_t sealed_token_size(CipherId cipher) {
  return cipher::padded_length(cipher, kTokenPlaintextSize);
}

std::size_t message_size(MessageType type, CipherId cipher) {
  switch (type) {
    case MessageType::Request: return 1;
    case MessageType::Challenge: return 1 + sizeof(Nonce);
    case MessageType::Token2:
    case MessageType::Token3: return 1 + sealed_token_size(cipher);
  }
  return 0;
}

Message decode_message(ByteView wire, CipherId cipher) {
  if (wire.empty()) throw DecodeError("empty message");
  const auto type_byte = wire[0];
  if (type_byte < 0x01 || type_byte > 0x04) {
    throw DecodeError("unknown message type 0x" + to_hex(wire.first(1)));
  }
  const auto type = static_cast<MessageType>(type_byte);
  const auto expected = message_size(type, cipher);
  if (wire.size() != expected) {
    throw DecodeError("message type 0x" + to_hex(wire.first(1)) + " must be " + std::to_string(expected) +
                      " bytes, got " + std::to_string(wire.size()));
  }
  auto body = wire.subspan(1);
  switch (type) {
    case MessageType::Request: return Request{};
    case MessageType::Challenge: return Challenge{to_array<8>(body)};
    case MessageType::Token2: return Token2{Bytes(body.begin(), body.end())};
    case MessageType::Token3: return Token3{Bytes(body.begin(), body.end())};
  }
  throw DecodeError("unreachable");
}

std::size_t transcript_bits(CipherId cipher) { return implant_tx_bits(cipher) + implant_rx_bits(cipher); }

std::size_t implant_tx_bits(CipherId cipher) {
  return 8 * (message_size(MessageType::Challenge, cipher) + message_size(MessageType::Token3, cipher));
}

std::size_t implant_rx_bits(CipherId cipher) {
  return 8 * (message_size(MessageType::Request, cipher) + message_size(MessageType::Token2, cipher));
}

std::size_t implant_block_operations(CipherId cipher) {
  return 2 * sealed_token_size(cipher) / cipher::block_size(cipher);
}

}  // namespace imd::map
