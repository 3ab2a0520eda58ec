#include "imd/battery/lifetime.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "imd/common/errors.hpp"
#include "imd/common/format.hpp"

namespace imd::battery {

BatteryConfig BatteryConfig::from_charge(double amp_hours, double nominal_volts) {
  if (!(amp_hours > 0.0) || !(nominal_volts > 0.0)) {
    throw ArgumentError("battery charge and nominal voltage must be positive");
  }
  BatteryConfig b{amp_hours * 3600.0 * nominal_volts};
  b.validate();
  return b;
}

void BatteryConfig::validate() const {
  if (!(capacity_j > 0.0) || !std::isfinite(capacity_j)) throw ArgumentError("battery capacity must be positive");
}

void UsageProfile::validate() const {
  if (!(duty_cycle >= 0.0 && duty_cycle <= 1.0)) throw ArgumentError("duty cycle must lie in [0, 1]");
  if (!(session_minutes_per_day >= 0.0 && session_minutes_per_day <= 1440.0)) {
    throw ArgumentError("session minutes per day must lie in [0, 1440]");
  }
  if (!(sessions_per_day >= 0.0)) throw ArgumentError("sessions per day must be non-negative");
  if (!(key_exchanges_per_day >= 0.0)) throw ArgumentError("key exchanges per day must be non-negative");
}

std::string SecurityChoice::label(const UsageProfile& profile) const {
  if (is_none()) return "NONE";
  return profile.key_exchanges_per_day > 0.0 ? "MAP+ECDH" : "MAP";
}

DailyEnergy daily_energy(const UsageProfile& profile, const energy::EnergyModel& model,
                         const SecurityChoice& security) {
  profile.validate();
  DailyEnergy d;
  d.medical_j = profile.duty_cycle * kSecondsPerDay * model.mcu.active_power_w +
                (1.0 - profile.duty_cycle) * kSecondsPerDay * model.mcu.sleep_power_w;
  if (profile.radio_active_throughout_session) {
    d.radio_j = profile.session_minutes_per_day * 60.0 * model.radio.tx_power_w;
  }
  if (!security.is_none()) {
    const auto session = energy::map_session_energy(model.crypto, model.mcu, model.radio, *security.suite());
    d.security_j = profile.sessions_per_day * session.total_j +
                   profile.key_exchanges_per_day * energy::key_exchange_energy(model.crypto);
  }
  d.total_j = d.medical_j + d.radio_j + d.security_j;
  return d;
}

std::optional<double> lifetime_years(const BatteryConfig& battery, double daily_j) {
  battery.validate();
  if (daily_j < 0.0 || std::isnan(daily_j)) throw ArgumentError("daily energy must be non-negative");
  if (daily_j == 0.0) return std::nullopt;
  return battery.capacity_j / daily_j / kDaysPerYear;
}

std::vector<LifetimeRow> lifetime_sweep(const std::vector<BatteryConfig>& batteries,
                                        const std::vector<cipher::CipherSuite>& suites,
                                        const UsageProfile& profile, const energy::EnergyModel& model) {
  if (batteries.empty()) throw ArgumentError("lifetime sweep needs at least one battery");
  if (suites.empty()) throw ArgumentError("lifetime sweep needs at least one cipher suite");

  std::vector<SecurityChoice> choices{SecurityChoice::none()};
  for (const auto& s : suites) choices.push_back(SecurityChoice::map(s));

  std::vector<LifetimeRow> rows;
  rows.reserve(batteries.size() * choices.size());
  for (const auto& b : batteries) {
    for (const auto& c : choices) {
      const double daily = daily_energy(profile, model, c).total_j;
      rows.push_back(LifetimeRow{b, c, daily, lifetime_years(b, daily)});
    }
  }

  auto rank = [](const SecurityChoice& c) {
    if (c.is_none()) return std::tuple(0, 0, 0);
    return std::tuple(1, static_cast<int>(c.suite()->cipher()), static_cast<int>(c.suite()->target()));
  };
  std::stable_sort(rows.begin(), rows.end(), [&](const LifetimeRow& a, const LifetimeRow& b) {
    if (a.battery.capacity_j != b.battery.capacity_j) return a.battery.capacity_j < b.battery.capacity_j;
    return rank(a.security) < rank(b.security);
  });
  return rows;
}

std::string lifetime_csv(const std::vector<LifetimeRow>& rows, const UsageProfile& profile) {
  std::ostringstream out;
  out << "battery_J,security,cipher,target,daily_J,lifetime_years\n";
  for (const auto& r : rows) {
    out << format_number(r.battery.capacity_j) << ',' << r.security.label(profile) << ',';
    if (r.security.is_none()) {
      out << "-,-,";
    } else {
      out << cipher::to_string(r.security.suite()->cipher()) << ',' << cipher::to_string(r.security.suite()->target())
          << ',';
    }
    out << format_number(r.daily_j) << ',' << format_number(r.years) << '\n';
  }
  return out.str();
}

}  // namespace imd::battery
