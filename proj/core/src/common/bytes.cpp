#include "imd/common/bytes.hpp"

#include <algorithm>

#include "imd/common/errors.hpp"

namespace imd {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string to_hex(ByteView data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw ArgumentError("hex string has odd length");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = hex_value(hex[2 * i]);
    int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw ArgumentError("invalid hex character in '" + std::string(hex) + "'");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

template <std::size_t N>
std::array<std::uint8_t, N> to_array(ByteView data) {
  if (data.size() != N) {
    throw LengthError("expected " + std::to_string(N) + " bytes, got " + std::to_string(data.size()));
  }
  std::array<std::uint8_t, N> out{};
  std::copy(data.begin(), data.end(), out.begin());
  return out;
}

template std::array<std::uint8_t, 4> to_array<4>(ByteView);
template std::array<std::uint8_t, 8> to_array<8>(ByteView);
template std::array<std::uint8_t, 16> to_array<16>(ByteView);
template std::array<std::uint8_t, 32> to_array<32>(ByteView);

}  // namespace imd
