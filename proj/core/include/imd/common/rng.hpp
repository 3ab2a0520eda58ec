#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace imd {

/// Seeded generator that every protocol run and simulation draws from.
///
/// Not a CSPRNG. Reproducibility across runs is the requirement here, so the
/// engine is std::mt19937_64 and the only state is the seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  void fill(std::span<std::uint8_t> out) {
    std::size_t i = 0;
    while (i < out.size()) {
      std::uint64_t word = engine_();
      for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
        out[i] = static_cast<std::uint8_t>(word);
        word >>= 8;
      }
    }
  }

  // Uniform in [0, 1).
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  double exponential(double rate) { return std::exponential_distribution<double>(rate)(engine_); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace imd
