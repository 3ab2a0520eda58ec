#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "imd/battery/lifetime.hpp"
#include "imd/bdos/sim.hpp"
#include "imd/cipher/block_cipher.hpp"
#include "imd/common/config.hpp"
#include "imd/energy/model.hpp"
#include "imd/zpd/zpd.hpp"

namespace imd::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kConfigError = 2 };

struct AttackSettings {
  double rate_hz = 0.0;
  double duration_s = 0.0;
  bdos::Defense defense = bdos::Defense::None;
  bdos::Arrivals arrivals = bdos::Arrivals::Periodic;
  std::optional<cipher::CipherSuite> suite;
  double tick_s = 1e-3;
  double sample_interval_s = 1.0;
  std::size_t battery_index = 0;
};

/// Parsed preset file. Every field is read and range-checked up front, so a
/// bad preset fails before any command runs.
struct ScenarioConfig {
  ConfigFile file;
  energy::EnergyModel model;
  std::vector<cipher::CipherSuite> suites;
  std::vector<battery::BatteryConfig> batteries;
  battery::UsageProfile usage;
  zpd::CapacitorSpec capacitor;
  zpd::HarvesterParams harvester;
  zpd::ChargeMode charge_mode = zpd::ChargeMode::FromEmpty;
  double ereq_j = 0.0;
  std::vector<double> ereq_sweep_j;
  AttackSettings attack;

  // Throws ConfigError on missing keys or out-of-range values.
  static ScenarioConfig from_file(ConfigFile file);

  // Keys without a provenance comment (overrides excluded).
  std::vector<std::string> keys_without_provenance() const;
};

struct CliOptions {
  std::string command;
  std::optional<std::filesystem::path> config_path;
  std::optional<std::filesystem::path> out_path;
  std::optional<std::filesystem::path> fixtures_dir;
  std::uint64_t seed = 1;
  std::optional<std::string> cipher;
  std::optional<std::string> target;
  std::optional<double> rate_hz;
  std::optional<double> duration_s;
  std::optional<std::string> defense;
  std::optional<std::string> arrivals;
  std::optional<double> ereq_j;
  bool tamper = false;
  bool summary_only = false;
};

// --config, then $IMD_GUARD_CONFIG, then the preset shipped with the build.
std::filesystem::path resolve_config_path(const CliOptions& opts);

// Loads the preset and applies command-line overrides.
ScenarioConfig load_scenario(const CliOptions& opts);

int cmd_kat(const CliOptions& opts, std::ostream& out);
int cmd_demo(const CliOptions& opts, std::ostream& out);
int cmd_fig1(const CliOptions& opts, std::ostream& out);
int cmd_fig2(const CliOptions& opts, std::ostream& out);
int cmd_fig3(const CliOptions& opts, std::ostream& out);
int cmd_bdos(const CliOptions& opts, std::ostream& out);

// Dispatches opts.command, writing to --out when given. Errors go to `err`.
int run(const CliOptions& opts, std::ostream& out, std::ostream& err);

// argv front end.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace imd::cli
