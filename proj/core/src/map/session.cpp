#include "imd/map/session.hpp"

#include <algorithm>

#include "imd/common/errors.hpp"

namespace imd::map {

using cipher::CipherSuite;
using cipher::SymmetricKey;

namespace {

template <std::size_t N>
void put(Bytes& out, const std::array<std::uint8_t, N>& field) {
  out.insert(out.end(), field.begin(), field.end());
}

template <std::size_t N>
std::array<std::uint8_t, N> take(ByteView in, std::size_t offset) {
  return to_array<N>(in.subspan(offset, N));
}

// Opens a sealed token and checks that every padding byte is zero.
Bytes open_checked(const CipherSuite& suite, const SymmetricKey& key, const Bytes& sealed) {
  auto plain = cipher::open_token(suite.cipher(), key, sealed);
  if (std::any_of(plain.begin() + kTokenPlaintextSize, plain.end(), [](std::uint8_t b) { return b != 0; })) {
    throw AuthenticationFailed("token padding is not zero");
  }
  return plain;
}

template <typename T>
const T& expect(const Message& msg) {
  if (const auto* m = std::get_if<T>(&msg)) return *m;
  throw ProtocolError("unexpected message type");
}

}  // namespace

std::string_view to_string(ReaderSession::State s) {
  switch (s) {
    case ReaderSession::State::Idle: return "Idle";
    case ReaderSession::State::AwaitChallenge: return "AwaitChallenge";
    case ReaderSession::State::AwaitToken3: return "AwaitToken3";
    case ReaderSession::State::Accepted: return "Accepted";
    case ReaderSession::State::Failed: return "Failed";
  }
  return "?";
}

std::string_view to_string(ImplantSession::State s) {
  switch (s) {
    case ImplantSession::State::Idle: return "Idle";
    case ImplantSession::State::AwaitToken2: return "AwaitToken2";
    case ImplantSession::State::Accepted: return "Accepted";
    case ImplantSession::State::Failed: return "Failed";
  }
  return "?";
}

// --- Reader ---------------------------------------------------------------

ReaderSession::ReaderSession(CipherSuite suite, SymmetricKey key, DeviceId implant_id)
    : suite_(suite), key_(key), implant_id_(implant_id) {}

Bytes ReaderSession::start(const Command& command) {
  if (state_ != State::Idle) throw StateError("reader start requires Idle, state is " + std::string(to_string(state_)));
  command_ = command;
  auto wire = encode_message(Request{});
  transcript_bytes_ += wire.size();
  state_ = State::AwaitChallenge;
  return wire;
}

Bytes ReaderSession::on_challenge(ByteView wire, Rng& rng) {
  if (state_ != State::AwaitChallenge) {
    throw StateError("challenge requires AwaitChallenge, state is " + std::string(to_string(state_)));
  }
  transcript_bytes_ += wire.size();
  try {
    const auto msg = decode_message(wire, suite_.cipher());
    const auto& challenge = expect<Challenge>(msg);
    implant_nonce_ = challenge.implant_nonce;

    Nonce nr{};
    rng.fill(nr);
    reader_nonce_ = nr;

    Bytes token;
    token.reserve(kTokenPlaintextSize);
    put(token, nr);
    put(token, challenge.implant_nonce);
    put(token, implant_id_);
    put(token, *command_);

    auto out = encode_message(Token2{cipher::seal_token(suite_.cipher(), key_, token)});
    transcript_bytes_ += out.size();
    state_ = State::AwaitToken3;
    return out;
  } catch (...) {
    state_ = State::Failed;
    throw;
  }
}

Response ReaderSession::on_token3(ByteView wire) {
  if (state_ != State::AwaitToken3) {
    throw StateError("token3 requires AwaitToken3, state is " + std::string(to_string(state_)));
  }
  transcript_bytes_ += wire.size();
  try {
    const auto msg = decode_message(wire, suite_.cipher());
    const auto& token3 = expect<Token3>(msg);
    auto plain = open_checked(suite_, key_, token3.sealed);
    // Response || N_I || N_R
    if (take<8>(plain, 8) != *implant_nonce_ || take<8>(plain, 16) != *reader_nonce_) {
      throw AuthenticationFailed("token3 nonces do not match this session");
    }
    response_ = take<8>(plain, 0);
    state_ = State::Accepted;
    return *response_;
  } catch (...) {
    state_ = State::Failed;
    throw;
  }
}

void ReaderSession::reset() {
  state_ = State::Idle;
  command_.reset();
  reader_nonce_.reset();
  implant_nonce_.reset();
  response_.reset();
  transcript_bytes_ = 0;
}

// --- Implant --------------------------------------------------------------

ImplantSession::ImplantSession(CipherSuite suite, SymmetricKey key, DeviceId own_id, Response response)
    : suite_(suite), key_(key), own_id_(own_id), response_(response) {}

Bytes ImplantSession::on_request(ByteView wire, Rng& rng) {
  if (state_ != State::Idle) throw StateError("request requires Idle, state is " + std::string(to_string(state_)));
  transcript_bytes_ += wire.size();
  try {
    const auto msg = decode_message(wire, suite_.cipher());
    expect<Request>(msg);
    Nonce ni{};
    rng.fill(ni);
    implant_nonce_ = ni;
    auto out = encode_message(Challenge{ni});
    transcript_bytes_ += out.size();
    state_ = State::AwaitToken2;
    return out;
  } catch (...) {
    state_ = State::Failed;
    throw;
  }
}

Bytes ImplantSession::on_token2(ByteView wire) {
  if (state_ != State::AwaitToken2) {
    throw StateError("token2 requires AwaitToken2, state is " + std::string(to_string(state_)));
  }
  transcript_bytes_ += wire.size();
  try {
    const auto msg = decode_message(wire, suite_.cipher());
    const auto& token2 = expect<Token2>(msg);
    auto plain = open_checked(suite_, key_, token2.sealed);
    // N_R || N_I || ID || Command
    if (take<8>(plain, 8) != *implant_nonce_) throw AuthenticationFailed("token2 carries a stale challenge nonce");
    if (take<4>(plain, 16) != own_id_) throw AuthenticationFailed("token2 is addressed to another device");

    const auto nr = take<8>(plain, 0);
    reader_nonce_ = nr;
    command_ = take<4>(plain, 20);

    Bytes token;
    token.reserve(kTokenPlaintextSize);
    put(token, response_);
    put(token, *implant_nonce_);
    put(token, nr);

    auto out = encode_message(Token3{cipher::seal_token(suite_.cipher(), key_, token)});
    transcript_bytes_ += out.size();
    state_ = State::Accepted;
    return out;
  } catch (...) {
    state_ = State::Failed;
    throw;
  }
}

void ImplantSession::reset() {
  state_ = State::Idle;
  implant_nonce_.reset();
  reader_nonce_.reset();
  command_.reset();
  transcript_bytes_ = 0;
}

}  // namespace imd::map
