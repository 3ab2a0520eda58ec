#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>

#include "imd/cipher/block_cipher.hpp"
#include "imd/common/errors.hpp"

namespace imd::energy {

// ECDH on secp256r1 executed on the crypto peripheral before a MAP session.
inline constexpr double kDefaultKeyExchangeJ = 1457e-6;
inline constexpr double kDefaultClockHz = 19e6;
inline constexpr double kDefaultDataRateBps = 265e3;

// Energy units throughout: joules, watts, seconds, bits.

struct McuParams {
  double clock_hz = kDefaultClockHz;
  double active_power_w = 0.0;
  double sleep_power_w = 0.0;

  // All positive, sleep below active. Throws ArgumentError.
  void validate() const;
};

struct RadioParams {
  double data_rate_bps = kDefaultDataRateBps;
  double tx_power_w = 0.0;
  double rx_power_w = 0.0;

  // Rate positive, powers non-negative. Throws ArgumentError.
  void validate() const;
};

class MissingCostEntry : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Per-block crypto energy for each (cipher, target) plus the one-off key
/// exchange energy.
class CryptoCostTable {
 public:
  void set_block_energy(const cipher::CipherSuite& suite, double joules);
  std::optional<double> block_energy(const cipher::CipherSuite& suite) const;
  bool contains(const cipher::CipherSuite& suite) const { return block_energy(suite).has_value(); }

  void set_key_exchange_energy(double joules);
  double key_exchange_energy() const { return key_exchange_j_; }

  // Every entry zero, including key exchange.
  static CryptoCostTable zero();

 private:
  using Key = std::pair<cipher::CipherId, cipher::ExecutionTarget>;
  std::map<Key, double> per_block_j_;
  double key_exchange_j_ = kDefaultKeyExchangeJ;
};

struct EnergyModel {
  McuParams mcu;
  RadioParams radio;
  CryptoCostTable crypto;
};

struct SessionCost {
  double crypto_j = 0.0;
  double radio_j = 0.0;
  double total_j = 0.0;
  std::size_t blocks = 0;
  std::size_t bits = 0;
};

enum class Direction { Tx, Rx };

// blocks x per-block energy. Throws MissingCostEntry.
double crypto_energy(const CryptoCostTable& table, const cipher::CipherSuite& suite, std::size_t blocks);

// (bits / rate) x power(direction). Throws ArgumentError on negative bits.
double radio_energy(const RadioParams& radio, double bits, Direction direction);

/// Implant-side cost of one MAP session: opening token2 plus sealing token3,
/// TX of M2+M4 and RX of M1+M3. MCU time spent waiting on the radio is part
/// of the radio power draw.
SessionCost map_session_energy(const CryptoCostTable& table, const McuParams& mcu, const RadioParams& radio,
                               const cipher::CipherSuite& suite);

double key_exchange_energy(const CryptoCostTable& table);

// map_session_energy(...).total_j + key_exchange_energy(table).
double secured_session_energy(const CryptoCostTable& table, const McuParams& mcu, const RadioParams& radio,
                              const cipher::CipherSuite& suite);

}  // namespace imd::energy
