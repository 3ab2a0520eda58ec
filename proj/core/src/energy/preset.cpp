#include "imd/energy/preset.hpp"

#include <string>

#include "imd/common/errors.hpp"

namespace imd::energy {

namespace {

template <typename Fn>
void rethrow_as_config(const ConfigFile& cfg, const char* section, Fn&& fn) {
  try {
    fn();
  } catch (const ArgumentError& e) {
    throw ConfigError(cfg.source() + ": [" + section + "] " + e.what());
  }
}

}  // namespace

EnergyModel energy_model_from_config(const ConfigFile& cfg) {
  EnergyModel m;

  m.mcu.clock_hz = cfg.get_double("mcu", "clock_hz");
  m.mcu.active_power_w = cfg.get_double("mcu", "active_power_w");
  m.mcu.sleep_power_w = cfg.get_double("mcu", "sleep_power_w");
  rethrow_as_config(cfg, "mcu", [&] { m.mcu.validate(); });

  m.radio.data_rate_bps = cfg.get_double("radio", "data_rate_bps");
  m.radio.tx_power_w = cfg.get_double("radio", "tx_power_w");
  m.radio.rx_power_w = cfg.get_double("radio", "rx_power_w");
  rethrow_as_config(cfg, "radio", [&] { m.radio.validate(); });

  for (const auto& [section, key] : cfg.keys()) {
    if (section != "crypto_block_j") continue;
    rethrow_as_config(cfg, "crypto_block_j", [&] {
      m.crypto.set_block_energy(cipher::CipherSuite::parse(key), cfg.get_double(section, key));
    });
  }
  rethrow_as_config(cfg, "key_exchange",
                    [&] { m.crypto.set_key_exchange_energy(cfg.get_double("key_exchange", "energy_j")); });
  return m;
}

std::vector<cipher::CipherSuite> suites_from_config(const ConfigFile& cfg, const CryptoCostTable& table) {
  std::vector<cipher::CipherSuite> suites;
  for (const auto& name : cfg.get_string_list("suites", "list")) {
    rethrow_as_config(cfg, "suites", [&] { suites.push_back(cipher::CipherSuite::parse(name)); });
    if (!table.contains(suites.back())) {
      throw ConfigError(cfg.source() + ": suite " + name + " has no [crypto_block_j] entry");
    }
  }
  if (suites.empty()) throw ConfigError(cfg.source() + ": [suites] list is empty");
  return suites;
}

}  // namespace imd::energy
