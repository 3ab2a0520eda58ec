#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "imd/cipher/block_cipher.hpp"
#include "imd/common/bytes.hpp"
#include "imd/common/rng.hpp"
#include "imd/map/messages.hpp"

namespace imd::map {

// Error handling shared by both endpoints:
//  - calling an operation in a state that does not allow it throws StateError
//    and leaves the session untouched;
//  - a malformed, mistyped or unverifiable message received in the right
//    state moves the session to Failed and throws (DecodeError,
//    ProtocolError or AuthenticationFailed). No wire message is emitted.
// Accepted and Failed are terminal until reset().

/// Reader (external programmer) side. Initiates the session and carries the
/// command inside token2.
class ReaderSession {
 public:
  enum class State { Idle, AwaitChallenge, AwaitToken3, Accepted, Failed };

  ReaderSession(cipher::CipherSuite suite, cipher::SymmetricKey key, DeviceId implant_id);

  // Idle -> AwaitChallenge; emits M1.
  Bytes start(const Command& command);
  // AwaitChallenge -> AwaitToken3; draws N_R from `rng` and emits M3.
  Bytes on_challenge(ByteView wire, Rng& rng);
  // AwaitToken3 -> Accepted; returns the implant's response.
  Response on_token3(ByteView wire);

  void reset();

  State state() const { return state_; }
  const cipher::CipherSuite& suite() const { return suite_; }
  std::size_t transcript_bytes() const { return transcript_bytes_; }
  const std::optional<Nonce>& own_nonce() const { return reader_nonce_; }
  const std::optional<Nonce>& peer_nonce() const { return implant_nonce_; }
  const std::optional<Response>& response() const { return response_; }

 private:
  cipher::CipherSuite suite_;
  cipher::SymmetricKey key_;
  DeviceId implant_id_;
  State state_ = State::Idle;
  std::optional<Command> command_;
  std::optional<Nonce> reader_nonce_;
  std::optional<Nonce> implant_nonce_;
  std::optional<Response> response_;
  std::size_t transcript_bytes_ = 0;
};

/// Implant side. Answers a request with a fresh challenge, verifies token2,
/// and replies with its configured response in token3.
class ImplantSession {
 public:
  enum class State { Idle, AwaitToken2, Accepted, Failed };

  ImplantSession(cipher::CipherSuite suite, cipher::SymmetricKey key, DeviceId own_id, Response response);

  // Idle -> AwaitToken2; draws N_I from `rng` and emits M2.
  Bytes on_request(ByteView wire, Rng& rng);
  // AwaitToken2 -> Accepted; emits M4 only when token2 verifies.
  Bytes on_token2(ByteView wire);

  void reset();

  State state() const { return state_; }
  const cipher::CipherSuite& suite() const { return suite_; }
  std::size_t transcript_bytes() const { return transcript_bytes_; }
  const std::optional<Nonce>& own_nonce() const { return implant_nonce_; }
  const std::optional<Nonce>& peer_nonce() const { return reader_nonce_; }
  const std::optional<Command>& command() const { return command_; }

 private:
  cipher::CipherSuite suite_;
  cipher::SymmetricKey key_;
  DeviceId own_id_;
  Response response_;
  State state_ = State::Idle;
  std::optional<Nonce> implant_nonce_;
  std::optional<Nonce> reader_nonce_;
  std::optional<Command> command_;
  std::size_t transcript_bytes_ = 0;
};

std::string_view to_string(ReaderSession::State s);
std::string_view to_string(ImplantSession::State s);

}  // namespace imd::map
