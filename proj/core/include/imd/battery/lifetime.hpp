#pragma once

#include <optional>
#include <string>
#include <vector>

#include "imd/cipher/block_cipher.hpp"
#include "imd/energy/model.hpp"

namespace imd::battery {

inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kDaysPerYear = 365.25;

/// Battery capacity, canonical in joules.
struct BatteryConfig {
  double capacity_j = 0.0;

  // J = Ah x 3600 x V. Throws ArgumentError on non-positive inputs.
  static BatteryConfig from_charge(double amp_hours, double nominal_volts);
  void validate() const;
};

struct UsageProfile {
  double duty_cycle = 0.05;               // medical MCU active fraction
  double session_minutes_per_day = 2.0;
  double sessions_per_day = 1.0;
  double key_exchanges_per_day = 1.0;
  bool radio_active_throughout_session = true;

  void validate() const;
};

/// No security at all, or MAP run with one cipher suite.
class SecurityChoice {
 public:
  static SecurityChoice none() { return SecurityChoice(); }
  static SecurityChoice map(const cipher::CipherSuite& suite) { return SecurityChoice(suite); }

  bool is_none() const { return !suite_.has_value(); }
  const std::optional<cipher::CipherSuite>& suite() const { return suite_; }

  // "NONE", "MAP" or "MAP+ECDH" depending on the profile's key exchanges.
  std::string label(const UsageProfile& profile) const;

 private:
  SecurityChoice() = default;
  explicit SecurityChoice(const cipher::CipherSuite& suite) : suite_(suite) {}

  std::optional<cipher::CipherSuite> suite_;
};

struct DailyEnergy {
  double medical_j = 0.0;
  double radio_j = 0.0;
  double security_j = 0.0;
  double total_j = 0.0;
};

/// Daily energy budget:
///   medical   duty x 86400 x P_active + (1 - duty) x 86400 x P_sleep
///   radio     session seconds x P_tx when the radio is pessimistically on for
///             the whole session, otherwise 0 (the MAP transcript bits are
///             then the only traffic and are charged in the security term)
///   security  sessions/day x MAP session total + key exchanges/day x ECDH
/// NONE zeroes only the security term.
DailyEnergy daily_energy(const UsageProfile& profile, const energy::EnergyModel& model,
                         const SecurityChoice& security);

// capacity / daily / 365.25. nullopt means unbounded (zero daily energy).
// Throws ArgumentError on negative daily energy.
std::optional<double> lifetime_years(const BatteryConfig& battery, double daily_j);

struct LifetimeRow {
  BatteryConfig battery;
  SecurityChoice security;
  double daily_j = 0.0;
  std::optional<double> years;
};

/// Full cross-product of batteries and {NONE} + suites. Rows are ordered by
/// battery capacity ascending, then NONE, then suites by (cipher, target)
/// enum order. Throws ArgumentError on empty lists.
std::vector<LifetimeRow> lifetime_sweep(const std::vector<BatteryConfig>& batteries,
                                        const std::vector<cipher::CipherSuite>& suites,
                                        const UsageProfile& profile, const energy::EnergyModel& model);

// Header battery_J,security,cipher,target,daily_J,lifetime_years
std::string lifetime_csv(const std::vector<LifetimeRow>& rows, const UsageProfile& profile);

}  // namespace imd::battery
