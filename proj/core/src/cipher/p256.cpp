#include "imd/cipher/p256.hpp"

#include <openssl/evp.h>

#include <algorithm>

#include "imd/common/errors.hpp"

namespace imd::cipher {

namespace {

__extension__ typedef unsigned __int128 u128;
using U256 = std::array<std::uint64_t, 4>;  // limb 0 least significant

U256 from_be(const std::array<std::uint8_t, 32>& b) {
  U256 r{};
  for (int i = 0; i < 4; ++i) r[3 - i] = load_be64(&b[8 * i]);
  return r;
}

std::array<std::uint8_t, 32> to_be(const U256& a) {
  std::array<std::uint8_t, 32> b{};
  for (int i = 0; i < 4; ++i) store_be64(&b[8 * i], a[3 - i]);
  return b;
}

U256 from_hex_literal(std::string_view hex) {
  return from_be(to_array<32>(from_hex(hex)));
}

bool is_zero(const U256& a) { return (a[0] | a[1] | a[2] | a[3]) == 0; }

// a >= b
bool geq(const U256& a, const U256& b) {
  for (int i = 3; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return true;
}

std::uint64_t sub_into(U256& r, const U256& a, const U256& b) {
  std::uint64_t borrow = 0;
  for (int i = 0; i < 4; ++i) {
    u128 d = static_cast<u128>(a[i]) - b[i] - borrow;
    r[i] = static_cast<std::uint64_t>(d);
    borrow = static_cast<std::uint64_t>(d >> 64) & 1;
  }
  return borrow;
}

std::uint64_t add_into(U256& r, const U256& a, const U256& b) {
  std::uint64_t carry = 0;
  for (int i = 0; i < 4; ++i) {
    u128 s = static_cast<u128>(a[i]) + b[i] + carry;
    r[i] = static_cast<std::uint64_t>(s);
    carry = static_cast<std::uint64_t>(s >> 64);
  }
  return carry;
}

/// Montgomery arithmetic modulo an odd 256-bit modulus with R = 2^256.
class MontField {
 public:
  explicit MontField(const U256& modulus) : m_(modulus) {
    std::uint64_t x = 1;
    for (int i = 0; i < 7; ++i) x *= 2 - m_[0] * x;
    neg_inv_ = ~x + 1;
    U256 v{1, 0, 0, 0};
    for (int i = 0; i < 512; ++i) v = add(v, v);
    r2_ = v;
    one_ = to_mont(U256{1, 0, 0, 0});
  }

  const U256& modulus() const { return m_; }
  const U256& one() const { return one_; }

  U256 add(const U256& a, const U256& b) const {
    U256 r;
    std::uint64_t carry = add_into(r, a, b);
    if (carry || geq(r, m_)) sub_into(r, r, m_);
    return r;
  }

  U256 sub(const U256& a, const U256& b) const {
    U256 r;
    if (sub_into(r, a, b)) add_into(r, r, m_);
    return r;
  }

  U256 mul(const U256& a, const U256& b) const {
    std::uint64_t t[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
      std::uint64_t carry = 0;
      for (int j = 0; j < 4; ++j) {
        u128 s = static_cast<u128>(a[j]) * b[i] + t[j] + carry;
        t[j] = static_cast<std::uint64_t>(s);
        carry = static_cast<std::uint64_t>(s >> 64);
      }
      u128 s = static_cast<u128>(t[4]) + carry;
      t[4] = static_cast<std::uint64_t>(s);
      t[5] = static_cast<std::uint64_t>(s >> 64);

      std::uint64_t q = t[0] * neg_inv_;
      s = static_cast<u128>(q) * m_[0] + t[0];
      carry = static_cast<std::uint64_t>(s >> 64);
      for (int j = 1; j < 4; ++j) {
        s = static_cast<u128>(q) * m_[j] + t[j] + carry;
        t[j - 1] = static_cast<std::uint64_t>(s);
        carry = static_cast<std::uint64_t>(s >> 64);
      }
      s = static_cast<u128>(t[4]) + carry;
      t[3] = static_cast<std::uint64_t>(s);
      t[4] = t[5] + static_cast<std::uint64_t>(s >> 64);
    }
    U256 r{t[0], t[1], t[2], t[3]};
    if (t[4] || geq(r, m_)) sub_into(r, r, m_);
    return r;
  }

  U256 sqr(const U256& a) const { return mul(a, a); }
  U256 to_mont(const U256& a) const { return mul(a, r2_); }
  U256 from_mont(const U256& a) const { return mul(a, U256{1, 0, 0, 0}); }

  U256 pow(const U256& base, const U256& exp) const {
    U256 result = one_;
    for (int i = 255; i >= 0; --i) {
      result = sqr(result);
      if ((exp[i / 64] >> (i % 64)) & 1) result = mul(result, base);
    }
    return result;
  }

  // Fermat inverse; the modulus is prime.
  U256 inv(const U256& a) const {
    U256 e;
    sub_into(e, m_, U256{2, 0, 0, 0});
    return pow(a, e);
  }

 private:
  U256 m_;
  U256 r2_{};
  U256 one_{};
  std::uint64_t neg_inv_ = 0;
};

struct Curve {
  MontField fp;
  U256 order;
  U256 b_mont;
  U256 gx, gy;

  Curve()
      : fp(from_hex_literal("ffffffff00000001000000000000000000000000ffffffffffffffffffffffff")),
        order(from_hex_literal("ffffffff00000000ffffffffffffffffbce6faada7179e84f3b9cac2fc632551")),
        b_mont(fp.to_mont(from_hex_literal("5ac635d8aa3a93e7b3ebbd55769886bc651d06b0cc53b0f63bce3c3e27d2604b"))),
        gx(from_hex_literal("6b17d1f2e12c4247f8bce6e563a440f277037d812deb33a0f4a13945d898c296")),
        gy(from_hex_literal("4fe342e2fe1a7f9b8ee7eb4a7c0f9e162bce33576b315ececbb6406837bf51f5")) {}
};

const Curve& curve() {
  static const Curve c;
  return c;
}

// Jacobian coordinates in Montgomery form; Z == 0 is the point at infinity.
struct Jacobian {
  U256 x, y, z;
  bool infinity() const { return is_zero(z); }
};

Jacobian dbl(const Jacobian& p) {
  const auto& f = curve().fp;
  if (p.infinity()) return p;
  // a = -3 doubling.
  U256 delta = f.sqr(p.z);
  U256 gamma = f.sqr(p.y);
  U256 beta = f.mul(p.x, gamma);
  U256 t = f.mul(f.sub(p.x, delta), f.add(p.x, delta));
  U256 alpha = f.add(f.add(t, t), t);
  U256 beta4 = f.add(beta, beta);
  beta4 = f.add(beta4, beta4);
  U256 beta8 = f.add(beta4, beta4);
  Jacobian r;
  r.x = f.sub(f.sqr(alpha), beta8);
  r.z = f.sub(f.sub(f.sqr(f.add(p.y, p.z)), gamma), delta);
  U256 g2 = f.sqr(gamma);
  U256 g8 = f.add(g2, g2);
  g8 = f.add(g8, g8);
  g8 = f.add(g8, g8);
  r.y = f.sub(f.mul(alpha, f.sub(beta4, r.x)), g8);
  return r;
}

Jacobian add(const Jacobian& p, const Jacobian& q) {
  const auto& f = curve().fp;
  if (p.infinity()) return q;
  if (q.infinity()) return p;
  U256 z1z1 = f.sqr(p.z);
  U256 z2z2 = f.sqr(q.z);
  U256 u1 = f.mul(p.x, z2z2);
  U256 u2 = f.mul(q.x, z1z1);
  U256 s1 = f.mul(f.mul(p.y, q.z), z2z2);
  U256 s2 = f.mul(f.mul(q.y, p.z), z1z1);
  U256 h = f.sub(u2, u1);
  U256 rr = f.sub(s2, s1);
  if (is_zero(h)) {
    if (is_zero(rr)) return dbl(p);
    return Jacobian{f.one(), f.one(), U256{}};
  }
  U256 h2 = f.add(h, h);
  U256 i = f.sqr(h2);
  U256 j = f.mul(h, i);
  rr = f.add(rr, rr);
  U256 v = f.mul(u1, i);
  Jacobian r;
  r.x = f.sub(f.sub(f.sqr(rr), j), f.add(v, v));
  U256 s1j = f.mul(s1, j);
  r.y = f.sub(f.mul(rr, f.sub(v, r.x)), f.add(s1j, s1j));
  r.z = f.mul(f.sub(f.sub(f.sqr(f.add(p.z, q.z)), z1z1), z2z2), h);
  return r;
}

Jacobian scalar_mul(const U256& k, const Jacobian& p) {
  Jacobian acc{curve().fp.one(), curve().fp.one(), U256{}};
  for (int i = 255; i >= 0; --i) {
    acc = dbl(acc);
    if ((k[i / 64] >> (i % 64)) & 1) acc = add(acc, p);
  }
  return acc;
}

AffinePoint to_affine(const Jacobian& p) {
  const auto& f = curve().fp;
  U256 zinv = f.inv(p.z);
  U256 zinv2 = f.sqr(zinv);
  U256 x = f.mul(p.x, zinv2);
  U256 y = f.mul(p.y, f.mul(zinv2, zinv));
  return AffinePoint{to_be(f.from_mont(x)), to_be(f.from_mont(y))};
}

Jacobian from_affine(const AffinePoint& a) {
  const auto& f = curve().fp;
  return Jacobian{f.to_mont(from_be(a.x)), f.to_mont(from_be(a.y)), f.one()};
}

}  // namespace

namespace p256 {

const AffinePoint& generator() {
  static const AffinePoint g{to_be(curve().gx), to_be(curve().gy)};
  return g;
}

bool on_curve(const AffinePoint& point) {
  const auto& c = curve();
  const auto& f = c.fp;
  U256 x = from_be(point.x);
  U256 y = from_be(point.y);
  if (geq(x, f.modulus()) || geq(y, f.modulus())) return false;
  U256 xm = f.to_mont(x);
  U256 ym = f.to_mont(y);
  U256 lhs = f.sqr(ym);
  U256 x3 = f.mul(f.sqr(xm), xm);
  U256 three_x = f.add(f.add(xm, xm), xm);
  U256 rhs = f.add(f.sub(x3, three_x), c.b_mont);
  return lhs == rhs;
}

bool valid_scalar(const Scalar256& k) {
  U256 v = from_be(k);
  return !is_zero(v) && !geq(v, curve().order);
}

AffinePoint multiply(const Scalar256& k, const AffinePoint& point) {
  if (!on_curve(point)) throw ValidationError("point is not on secp256r1");
  U256 scalar = from_be(k);
  if (is_zero(scalar)) throw ValidationError("scalar is zero");
  Jacobian r = scalar_mul(scalar, from_affine(point));
  if (r.infinity()) throw ValidationError("scalar multiplication reached the point at infinity");
  return to_affine(r);
}

}  // namespace p256

KeyAgreementParams KeyAgreementParams::from_private_scalar(const Scalar256& scalar) {
  if (!p256::valid_scalar(scalar)) throw ValidationError("private scalar outside [1, n-1]");
  return KeyAgreementParams(scalar, p256::multiply(scalar, p256::generator()));
}

KeyAgreementParams generate_keypair(Rng& rng) {
  Scalar256 k{};
  do {
    rng.fill(k);
  } while (!p256::valid_scalar(k));
  return KeyAgreementParams::from_private_scalar(k);
}

KeyAgreementParams generate_keypair(std::uint64_t seed) {
  Rng rng(seed);
  return generate_keypair(rng);
}

std::array<std::uint8_t, 32> shared_secret(const KeyAgreementParams& own, const AffinePoint& peer) {
  if (!p256::on_curve(peer)) throw ValidationError("peer public point is not on secp256r1");
  return p256::multiply(own.private_scalar(), peer).x;
}

SymmetricKey derive_session_key(ByteView shared) {
  if (shared.size() != 32) {
    throw LengthError("shared secret must be 32 bytes, got " + std::to_string(shared.size()));
  }
  std::array<std::uint8_t, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(shared.data(), shared.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1 || len != 32) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::array<std::uint8_t, SymmetricKey::kSize> key{};
  std::copy_n(digest.begin(), key.size(), key.begin());
  return SymmetricKey(key);
}

}  // namespace imd::cipher
