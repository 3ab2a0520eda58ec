#include "imd/energy/model.hpp"

#include <cmath>
#include <string>

#include "imd/map/messages.hpp"

namespace imd::energy {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ArgumentError(what);
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }
bool finite_pos(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void McuParams::validate() const {
  require(finite_pos(clock_hz), "MCU clock frequency must be positive");
  require(finite_pos(active_power_w), "MCU active power must be positive");
  require(finite_pos(sleep_power_w), "MCU sleep power must be positive");
  require(sleep_power_w < active_power_w, "MCU sleep power must be below active power");
}

void RadioParams::validate() const {
  require(finite_pos(data_rate_bps), "radio data rate must be positive");
  require(finite_nonneg(tx_power_w), "radio TX power must be non-negative");
  require(finite_nonneg(rx_power_w), "radio RX power must be non-negative");
}

void CryptoCostTable::set_block_energy(const cipher::CipherSuite& suite, double joules) {
  require(finite_nonneg(joules), "per-block crypto energy must be non-negative");
  per_block_j_[{suite.cipher(), suite.target()}] = joules;
}

std::optional<double> CryptoCostTable::block_energy(const cipher::CipherSuite& suite) const {
  auto it = per_block_j_.find({suite.cipher(), suite.target()});
  if (it == per_block_j_.end()) return std::nullopt;
  return it->second;
}

void CryptoCostTable::set_key_exchange_energy(double joules) {
  require(finite_nonneg(joules), "key exchange energy must be non-negative");
  key_exchange_j_ = joules;
}

CryptoCostTable CryptoCostTable::zero() {
  CryptoCostTable t;
  t.set_key_exchange_energy(0.0);
  for (auto id : cipher::kAllCiphers) t.set_block_energy({id, cipher::ExecutionTarget::Cpu}, 0.0);
  t.set_block_energy({cipher::CipherId::Aes128, cipher::ExecutionTarget::CryptoPeripheral}, 0.0);
  return t;
}

double crypto_energy(const CryptoCostTable& table, const cipher::CipherSuite& suite, std::size_t blocks) {
  auto per_block = table.block_energy(suite);
  if (!per_block) throw MissingCostEntry("no crypto cost entry for " + suite.name());
  return static_cast<double>(blocks) * *per_block;
}

double radio_energy(const RadioParams& radio, double bits, Direction direction) {
  if (!(bits >= 0.0)) throw ArgumentError("bit count must be non-negative");
  const double power = direction == Direction::Tx ? radio.tx_power_w : radio.rx_power_w;
  return bits / radio.data_rate_bps * power;
}

SessionCost map_session_energy(const CryptoCostTable& table, const McuParams& mcu, const RadioParams& radio,
                               const cipher::CipherSuite& suite) {
  (void)mcu;  // folded into the crypto and radio figures
  radio.validate();
  const auto id = suite.cipher();
  SessionCost cost;
  cost.blocks = map::implant_block_operations(id);
  cost.bits = map::transcript_bits(id);
  cost.crypto_j = crypto_energy(table, suite, cost.blocks);
  cost.radio_j = radio_energy(radio, static_cast<double>(map::implant_tx_bits(id)), Direction::Tx) +
                 radio_energy(radio, static_cast<double>(map::implant_rx_bits(id)), Direction::Rx);
  cost.total_j = cost.crypto_j + cost.radio_j;
  return cost;
}

double key_exchange_energy(const CryptoCostTable& table) { return table.key_exchange_energy(); }

double secured_session_energy(const CryptoCostTable& table, const McuParams& mcu, const RadioParams& radio,
                              const cipher::CipherSuite& suite) {
  return map_session_energy(table, mcu, radio, suite).total_j + key_exchange_energy(table);
}

}  // namespace imd::energy
