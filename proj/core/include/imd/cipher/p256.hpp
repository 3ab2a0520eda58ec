#pragma once

#include <array>
#include <cstdint>

#include "imd/cipher/block_cipher.hpp"
#include "imd/common/bytes.hpp"
#include "imd/common/rng.hpp"

namespace imd::cipher {

enum class CurveId : std::uint8_t { Secp256r1 };

using Scalar256 = std::array<std::uint8_t, 32>;  // big-endian

struct AffinePoint {
  std::array<std::uint8_t, 32> x{};  // big-endian
  std::array<std::uint8_t, 32> y{};

  friend bool operator==(const AffinePoint&, const AffinePoint&) = default;
};

namespace p256 {

const AffinePoint& generator();

// y^2 = x^3 - 3x + b (mod p), with both coordinates reduced below p.
bool on_curve(const AffinePoint& point);

// True when 1 <= k <= n-1.
bool valid_scalar(const Scalar256& k);

// k * point. Throws ValidationError when `point` is off-curve, `k` is zero,
// or the product is the point at infinity. Not constant-time.
AffinePoint multiply(const Scalar256& k, const AffinePoint& point);

}  // namespace p256

/// ECDH key pair on secp256r1. Invariants hold by construction: the scalar
/// lies in [1, n-1] and the public point is scalar * G.
class KeyAgreementParams {
 public:
  // Throws ValidationError when the scalar is outside [1, n-1].
  static KeyAgreementParams from_private_scalar(const Scalar256& scalar);

  CurveId curve() const { return CurveId::Secp256r1; }
  const Scalar256& private_scalar() const { return scalar_; }
  const AffinePoint& public_point() const { return public_; }

 private:
  KeyAgreementParams(const Scalar256& scalar, const AffinePoint& pub) : scalar_(scalar), public_(pub) {}

  Scalar256 scalar_;
  AffinePoint public_;
};

// Rejection-samples a scalar from `rng` until it lies in range.
KeyAgreementParams generate_keypair(Rng& rng);
KeyAgreementParams generate_keypair(std::uint64_t seed);

// x-coordinate of own.scalar * peer. Rejects off-curve peers.
std::array<std::uint8_t, 32> shared_secret(const KeyAgreementParams& own, const AffinePoint& peer);

// First 16 bytes of SHA-256(shared). Throws LengthError unless 32 bytes.
SymmetricKey derive_session_key(ByteView shared);

}  // namespace imd::cipher
