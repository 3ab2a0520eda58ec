#include "imd/cipher/aes128.hpp"

#include <cstring>

namespace imd::cipher {

namespace {

constexpr std::uint8_t xtime(std::uint8_t x) {
  return static_cast<std::uint8_t>((x << 1) ^ ((x & 0x80) ? 0x1b : 0x00));
}

constexpr std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b) {
  std::uint8_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a = xtime(a);
    b >>= 1;
  }
  return r;
}

constexpr std::uint8_t gf_inverse(std::uint8_t x) {
  // x^254; maps 0 to 0 as AES requires.
  std::uint8_t result = 1;
  std::uint8_t base = x;
  for (int e = 254; e; e >>= 1) {
    if (e & 1) result = gf_mul(result, base);
    base = gf_mul(base, base);
  }
  return x ? result : 0;
}

constexpr std::uint8_t rotl8(std::uint8_t x, int r) {
  return static_cast<std::uint8_t>((x << r) | (x >> (8 - r)));
}

struct SBoxes {
  std::array<std::uint8_t, 256> fwd{};
  std::array<std::uint8_t, 256> inv{};
};

constexpr SBoxes make_sboxes() {
  SBoxes s;
  for (int i = 0; i < 256; ++i) {
    auto b = gf_inverse(static_cast<std::uint8_t>(i));
    auto v = static_cast<std::uint8_t>(b ^ rotl8(b, 1) ^ rotl8(b, 2) ^ rotl8(b, 3) ^ rotl8(b, 4) ^ 0x63);
    s.fwd[i] = v;
    s.inv[v] = static_cast<std::uint8_t>(i);
  }
  return s;
}

constexpr SBoxes kSBox = make_sboxes();
static_assert(kSBox.fwd[0x00] == 0x63 && kSBox.fwd[0x53] == 0xed);

using State = std::array<std::uint8_t, 16>;

void add_round_key(State& s, const std::uint8_t* rk) {
  for (int i = 0; i < 16; ++i) s[i] ^= rk[i];
}

void sub_bytes(State& s) {
  for (auto& b : s) b = kSBox.fwd[b];
}

void inv_sub_bytes(State& s) {
  for (auto& b : s) b = kSBox.inv[b];
}

// State is column-major: byte (row r, column c) lives at index r + 4c.
void shift_rows(State& s) {
  State t = s;
  for (int r = 1; r < 4; ++r)
    for (int c = 0; c < 4; ++c) s[r + 4 * c] = t[r + 4 * ((c + r) % 4)];
}

void inv_shift_rows(State& s) {
  State t = s;
  for (int r = 1; r < 4; ++r)
    for (int c = 0; c < 4; ++c) s[r + 4 * c] = t[r + 4 * ((c - r + 4) % 4)];
}

void mix_columns(State& s) {
  for (int c = 0; c < 4; ++c) {
    std::uint8_t* col = &s[4 * c];
    std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
    col[0] = static_cast<std::uint8_t>(xtime(a0) ^ xtime(a1) ^ a1 ^ a2 ^ a3);
    col[1] = static_cast<std::uint8_t>(a0 ^ xtime(a1) ^ xtime(a2) ^ a2 ^ a3);
    col[2] = static_cast<std::uint8_t>(a0 ^ a1 ^ xtime(a2) ^ xtime(a3) ^ a3);
    col[3] = static_cast<std::uint8_t>(xtime(a0) ^ a0 ^ a1 ^ a2 ^ xtime(a3));
  }
}

void inv_mix_columns(State& s) {
  for (int c = 0; c < 4; ++c) {
    std::uint8_t* col = &s[4 * c];
    std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
    col[0] = gf_mul(a0, 14) ^ gf_mul(a1, 11) ^ gf_mul(a2, 13) ^ gf_mul(a3, 9);
    col[1] = gf_mul(a0, 9) ^ gf_mul(a1, 14) ^ gf_mul(a2, 11) ^ gf_mul(a3, 13);
    col[2] = gf_mul(a0, 13) ^ gf_mul(a1, 9) ^ gf_mul(a2, 14) ^ gf_mul(a3, 11);
    col[3] = gf_mul(a0, 11) ^ gf_mul(a1, 13) ^ gf_mul(a2, 9) ^ gf_mul(a3, 14);
  }
}

}  // namespace

Aes128::Aes128(const SymmetricKey& key) {
  std::memcpy(round_keys_.data(), key.bytes().data(), 16);
  std::uint8_t rcon = 0x01;
  for (int i = 4; i < 44; ++i) {
    std::uint8_t t[4];
    std::memcpy(t, &round_keys_[4 * (i - 1)], 4);
    if (i % 4 == 0) {
      std::uint8_t first = t[0];
      t[0] = static_cast<std::uint8_t>(kSBox.fwd[t[1]] ^ rcon);
      t[1] = kSBox.fwd[t[2]];
      t[2] = kSBox.fwd[t[3]];
      t[3] = kSBox.fwd[first];
      rcon = xtime(rcon);
    }
    for (int j = 0; j < 4; ++j) round_keys_[4 * i + j] = round_keys_[4 * (i - 4) + j] ^ t[j];
  }
}

void Aes128::encrypt(const std::uint8_t* in, std::uint8_t* out) const {
  State s;
  std::memcpy(s.data(), in, 16);
  add_round_key(s, &round_keys_[0]);
  for (int round = 1; round < 10; ++round) {
    sub_bytes(s);
    shift_rows(s);
    mix_columns(s);
    add_round_key(s, &round_keys_[16 * round]);
  }
  sub_bytes(s);
  shift_rows(s);
  add_round_key(s, &round_keys_[160]);
  std::memcpy(out, s.data(), 16);
}

void Aes128::decrypt(const std::uint8_t* in, std::uint8_t* out) const {
  State s;
  std::memcpy(s.data(), in, 16);
  add_round_key(s, &round_keys_[160]);
  for (int round = 9; round > 0; --round) {
    inv_shift_rows(s);
    inv_sub_bytes(s);
    add_round_key(s, &round_keys_[16 * round]);
    inv_mix_columns(s);
  }
  inv_shift_rows(s);
  inv_sub_bytes(s);
  add_round_key(s, &round_keys_[0]);
  std::memcpy(out, s.data(), 16);
}

}  // namespace imd::cipher
