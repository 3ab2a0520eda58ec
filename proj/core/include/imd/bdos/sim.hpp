#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "imd/cipher/block_cipher.hpp"
#include "imd/energy/model.hpp"
#include "imd/zpd/zpd.hpp"

namespace imd::bdos {

enum class Defense { None, Zpd };
enum class Arrivals { Periodic, Poisson };

std::string_view to_string(Defense d);
std::string_view to_string(Arrivals a);
Defense parse_defense(std::string_view text);    // "none" | "zpd", ArgumentError otherwise
Arrivals parse_arrivals(std::string_view text);  // "periodic" | "poisson"

// Implant-side cost of one attacker request without a defense: MAP crypto
// for the whole session plus receiving the reader's messages.
double per_request_energy(const energy::EnergyModel& model, const cipher::CipherSuite& suite);

struct AttackScenario {
  double rate_hz = 1.0;
  double duration_s = 60.0;
  Defense defense = Defense::None;
  Arrivals arrivals = Arrivals::Periodic;

  double battery_j = 10080.0;
  double sleep_power_w = 0.0;
  double per_request_j = 0.0;

  zpd::CapacitorSpec capacitor{470e-6};
  zpd::HarvesterParams harvester;
  zpd::ChargeMode charge_mode = zpd::ChargeMode::FromEmpty;
  // Stored energy at which the gate turns Ready; defaults to the usable
  // energy of the capacitor (fully charged).
  std::optional<double> gate_threshold_j;

  std::uint64_t seed = 0;
  double tick_s = 1e-3;
  double sample_interval_s = 1.0;  // 0 disables periodic samples
  bool record_events = true;

  // rate >= 0, duration > 0, tick > 0, battery > 0, energies >= 0.
  // Throws ArgumentError.
  void validate() const;
  double gate_threshold() const;
};

enum class Source { Battery, Capacitor, None };
std::string_view to_string(Source s);

struct SimEvent {
  double t_s = 0.0;
  std::string kind;  // request, ignored, ready, auth_attempt, rejected, sample, depleted, end
  Source source = Source::None;
  double delta_j = 0.0;
  double battery_j = 0.0;
};

struct SimSummary {
  double battery_consumed_j = 0.0;
  double sleep_drain_j = 0.0;
  double attack_drain_j = 0.0;  // attack-attributable battery energy
  std::uint64_t requests = 0;
  std::uint64_t attempts_served = 0;
  std::optional<double> depleted_at_s;  // tick-aligned
  double end_s = 0.0;
};

struct SimTrace {
  std::vector<SimEvent> events;
  std::vector<std::pair<double, double>> battery_series;  // (t, J)
  SimSummary summary;
};

/// Hybrid discrete-event run. Request arrivals and gate transitions are
/// exact-time events; between them the battery drains linearly (sleep power
/// plus, without a defense, the current request spread over the gap to the
/// next arrival). Depletion is located inside its segment and rounded up to
/// the tick grid.
SimTrace simulate(const AttackScenario& scenario);

// capacity / (rate x E + sleep). nullopt when the total drain is zero.
std::optional<double> time_to_depletion_analytic(double battery_j, double per_request_j, double rate_hz,
                                                 double sleep_power_w);

// 1 / (charging_time + auth_time).
double max_auth_rate_under_zpd(const zpd::CapacitorSpec& spec, const zpd::HarvesterParams& harvester,
                               zpd::ChargeMode mode = zpd::ChargeMode::FromEmpty, double auth_time_s = 0.0);

// Header t_s,event,source,delta_J,battery_J and a final
// "# depleted_at=...,attempts=..." row.
std::string trace_csv(const SimTrace& trace);

}  // namespace imd::bdos
