#include "imd/cipher/speck128.hpp"

#include <bit>

namespace imd::cipher {

namespace {

inline void round_fwd(std::uint64_t& x, std::uint64_t& y, std::uint64_t k) {
  x = (std::rotr(x, 8) + y) ^ k;
  y = std::rotl(y, 3) ^ x;
}

inline void round_inv(std::uint64_t& x, std::uint64_t& y, std::uint64_t k) {
  y = std::rotr(y ^ x, 3);
  x = std::rotl((x ^ k) - y, 8);
}

}  // namespace

Speck128::Speck128(const SymmetricKey& key) {
  std::uint64_t k = load_le64(key.bytes().data());
  std::uint64_t l = load_le64(key.bytes().data() + 8);
  for (int i = 0; i < kRounds; ++i) {
    round_keys_[i] = k;
    // The key schedule reuses the round function with the counter as key.
    round_fwd(l, k, static_cast<std::uint64_t>(i));
  }
}

void Speck128::encrypt(const std::uint8_t* in, std::uint8_t* out) const {
  std::uint64_t y = load_le64(in);
  std::uint64_t x = load_le64(in + 8);
  for (auto rk : round_keys_) round_fwd(x, y, rk);
  store_le64(out, y);
  store_le64(out + 8, x);
}

void Speck128::decrypt(const std::uint8_t* in, std::uint8_t* out) const {
  std::uint64_t y = load_le64(in);
  std::uint64_t x = load_le64(in + 8);
  for (int i = kRounds - 1; i >= 0; --i) round_inv(x, y, round_keys_[i]);
  store_le64(out, y);
  store_le64(out + 8, x);
}

}  // namespace imd::cipher
