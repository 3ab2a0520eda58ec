#pragma once

#include <vector>

#include "imd/cipher/block_cipher.hpp"
#include "imd/common/config.hpp"
#include "imd/energy/model.hpp"

namespace imd::energy {

// Reads [mcu], [radio], [crypto_block_j] and [key_exchange]. Every value is
// range-checked here so later stages never see a negative power or a zero
// data rate. Throws ConfigError.
EnergyModel energy_model_from_config(const ConfigFile& cfg);

// [suites] list = AES128/CPU, ... in file order. Every listed suite must
// have a [crypto_block_j] entry.
std::vector<cipher::CipherSuite> suites_from_config(const ConfigFile& cfg, const CryptoCostTable& table);

}  // namespace imd::energy
