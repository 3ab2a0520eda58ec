#include "imd/bdos/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "imd/common/errors.hpp"
#include "imd/common/format.hpp"
#include "imd/common/rng.hpp"
#include "imd/map/messages.hpp"

namespace imd::bdos {

namespace {
constexpr double kNever = std::numeric_limits<double>::infinity();
}

std::string_view to_string(Defense d) { return d == Defense::None ? "none" : "zpd"; }
std::string_view to_string(Arrivals a) { return a == Arrivals::Periodic ? "periodic" : "poisson"; }

std::string_view to_string(Source s) {
  switch (s) {
    case Source::Battery: return "battery";
    case Source::Capacitor: return "capacitor";
    case Source::None: return "-";
  }
  return "-";
}

Defense parse_defense(std::string_view text) {
  if (text == "none") return Defense::None;
  if (text == "zpd") return Defense::Zpd;
  throw ArgumentError("unknown defense '" + std::string(text) + "' (expected none or zpd)");
}

Arrivals parse_arrivals(std::string_view text) {
  if (text == "periodic") return Arrivals::Periodic;
  if (text == "poisson") return Arrivals::Poisson;
  throw ArgumentError("unknown arrival process '" + std::string(text) + "' (expected periodic or poisson)");
}

double per_request_energy(const energy::EnergyModel& model, const cipher::CipherSuite& suite) {
  const auto blocks = map::implant_block_operations(suite.cipher());
  return energy::crypto_energy(model.crypto, suite, blocks) +
         energy::radio_energy(model.radio, static_cast<double>(map::implant_rx_bits(suite.cipher())),
                              energy::Direction::Rx);
}

void AttackScenario::validate() const {
  auto finite_nonneg = [](double v) { return v >= 0.0 && std::isfinite(v); };
  if (!finite_nonneg(rate_hz)) throw ArgumentError("attack rate must be >= 0");
  if (!(duration_s > 0.0) || !std::isfinite(duration_s)) throw ArgumentError("attack duration must be > 0");
  if (!(tick_s > 0.0) || !std::isfinite(tick_s)) throw ArgumentError("simulation tick must be > 0");
  if (!(battery_j > 0.0) || !std::isfinite(battery_j)) throw ArgumentError("battery capacity must be > 0");
  if (!finite_nonneg(sleep_power_w)) throw ArgumentError("sleep power must be >= 0");
  if (!finite_nonneg(per_request_j)) throw ArgumentError("per-request energy must be >= 0");
  if (!finite_nonneg(sample_interval_s)) throw ArgumentError("sample interval must be >= 0");
  if (defense == Defense::Zpd) {
    capacitor.validate();
    harvester.validate();
    if (!(capacitor.capacitance_f > 0.0)) throw ArgumentError("ZPD capacitor must have positive capacitance");
    const double t = gate_threshold();
    if (!(t > 0.0) || t > zpd::usable_energy(capacitor)) {
      throw ArgumentError("gate threshold must lie in (0, usable capacitor energy]");
    }
  }
}

double AttackScenario::gate_threshold() const {
  return gate_threshold_j ? *gate_threshold_j : zpd::usable_energy(capacitor);
}

SimTrace simulate(const AttackScenario& sc) {
  sc.validate();
  Rng rng(sc.seed);
  SimTrace trace;
  auto& sum = trace.summary;

  const bool zpd_on = sc.defense == Defense::Zpd;
  const double cap = sc.battery_j;

  // Attack energy drawn from the battery: `completed` requests at E each
  // (recomputed, never accumulated, so long runs do not drift), plus the
  // request in service flowing at `flow` J/s since seg_start. `gate_drawn`
  // is whatever the ZPD gate billed to the battery.
  std::uint64_t completed = 0;
  double gate_drawn = 0.0;
  double flow = 0.0;
  double seg_start = 0.0;
  bool in_service = false;
  auto attack_at = [&](double t) {
    return static_cast<double>(completed) * sc.per_request_j + gate_drawn + flow * (t - seg_start);
  };
  auto battery_at = [&](double t) { return cap - (sc.sleep_power_w * t + attack_at(t)); };

  // Reported values never rise, even by one ulp at a segment boundary.
  double last_reported = cap;
  auto report = [&](double t) {
    last_reported = std::max(0.0, std::min(last_reported, battery_at(t)));
    return last_reported;
  };

  auto record = [&](double t, const char* kind, Source src, double delta, bool always = false) {
    if (sc.record_events || always) trace.events.push_back(SimEvent{t, kind, src, delta, report(t)});
  };

  // Arrival process.
  std::uint64_t arrival_index = 0;
  auto arrival_time = [&](double prev) -> double {
    if (sc.rate_hz <= 0.0) return kNever;
    if (sc.arrivals == Arrivals::Periodic) return static_cast<double>(arrival_index) / sc.rate_hz;
    return prev + rng.exponential(sc.rate_hz);
  };
  double next_arrival = sc.rate_hz > 0.0 ? (sc.arrivals == Arrivals::Periodic ? 0.0 : arrival_time(0.0)) : kNever;

  // ZPD gate and harvester.
  std::optional<zpd::ZpdGate> gate;
  double threshold = 0.0;
  double recharge_s = kNever;
  double next_ready = kNever;
  if (zpd_on) {
    threshold = sc.gate_threshold();
    gate.emplace(sc.capacitor, threshold);
    const double dead = sc.charge_mode == zpd::ChargeMode::FromEmpty
                            ? 0.5 * sc.capacitor.capacitance_f * sc.capacitor.v_min * sc.capacitor.v_min
                            : 0.0;
    recharge_s = (dead + threshold) / sc.harvester.delivered_power_w;
    // The harvester only runs while the attacker is transmitting.
    if (sc.rate_hz > 0.0) next_ready = recharge_s;
  }

  std::uint64_t sample_index = 0;
  double next_sample = sc.sample_interval_s > 0.0 ? 0.0 : kNever;

  double t = 0.0;
  for (;;) {
    const double t_next = std::min({next_ready, next_arrival, next_sample, sc.duration_s});

    if (battery_at(t_next) <= 0.0) {
      const double slope = sc.sleep_power_w + flow;
      const double t_dep = t + battery_at(t) / slope;
      const double q = std::ceil(t_dep / sc.tick_s) * sc.tick_s;
      sum.depleted_at_s = q;
      sum.end_s = q;
      trace.battery_series.emplace_back(q, 0.0);
      trace.events.push_back(SimEvent{q, "depleted", Source::None, 0.0, 0.0});
      break;
    }
    t = t_next;

    if (next_ready <= t) {
      gate->step(zpd::ZpdGate::Harvest{threshold});
      record(t, "ready", Source::Capacitor, threshold);
      next_ready = kNever;
      continue;
    }

    if (next_arrival <= t && t < sc.duration_s) {
      ++sum.requests;
      ++arrival_index;
      const double following = arrival_time(t);
      if (!zpd_on) {
        ++sum.attempts_served;
        if (in_service) ++completed;  // the previous request has finished
        seg_start = t;
        in_service = following > t;
        if (in_service) {
          flow = sc.per_request_j / (following - t);
        } else {
          ++completed;
          flow = 0.0;
        }
        record(t, "request", Source::Battery, -sc.per_request_j);
      } else {
        auto r = gate->step(zpd::ZpdGate::AuthRequest{});
        gate_drawn += r.battery_drawn_j;
        if (r.state == zpd::ZpdGate::State::Authenticating) {
          ++sum.attempts_served;
          record(t, "auth_attempt", Source::Capacitor, -threshold);
          const double leftover = gate->stored_energy();
          auto f = gate->step(zpd::ZpdGate::AuthFailure{});
          gate_drawn += f.battery_drawn_j;
          record(t, "rejected", Source::Capacitor, -leftover);
          next_ready = t + recharge_s;
        } else {
          record(t, "ignored", Source::None, 0.0);
        }
      }
      next_arrival = following;
      continue;
    }

    if (next_sample <= t && t < sc.duration_s) {
      trace.battery_series.emplace_back(t, report(t));
      record(t, "sample", Source::None, 0.0);
      ++sample_index;
      next_sample = static_cast<double>(sample_index) * sc.sample_interval_s;
      continue;
    }

    // t == duration
    sum.end_s = t;
    trace.battery_series.emplace_back(t, report(t));
    record(t, "end", Source::None, 0.0, true);
    break;
  }

  sum.sleep_drain_j = sc.sleep_power_w * sum.end_s;
  sum.attack_drain_j = attack_at(sum.end_s);
  sum.battery_consumed_j = sum.depleted_at_s ? cap : sum.sleep_drain_j + sum.attack_drain_j;
  return trace;
}

std::optional<double> time_to_depletion_analytic(double battery_j, double per_request_j, double rate_hz,
                                                 double sleep_power_w) {
  if (!(battery_j > 0.0)) throw ArgumentError("battery capacity must be > 0");
  if (!(per_request_j >= 0.0) || !(rate_hz >= 0.0) || !(sleep_power_w >= 0.0)) {
    throw ArgumentError("drain parameters must be non-negative");
  }
  const double drain = rate_hz * per_request_j + sleep_power_w;
  if (drain == 0.0) return std::nullopt;
  return battery_j / drain;
}

double max_auth_rate_under_zpd(const zpd::CapacitorSpec& spec, const zpd::HarvesterParams& harvester,
                               zpd::ChargeMode mode, double auth_time_s) {
  if (!(auth_time_s >= 0.0)) throw ArgumentError("authentication time must be >= 0");
  return 1.0 / (zpd::charging_time(spec, harvester, mode) + auth_time_s);
}

std::string trace_csv(const SimTrace& trace) {
  std::ostringstream out;
  out << "t_s,event,source,delta_J,battery_J\n";
  for (const auto& e : trace.events) {
    out << format_number(e.t_s) << ',' << e.kind << ',' << to_string(e.source) << ',' << format_number(e.delta_j)
        << ',' << format_number(e.battery_j) << '\n';
  }
  out << "# depleted_at=" << (trace.summary.depleted_at_s ? format_number(*trace.summary.depleted_at_s) : "none")
      << ",attempts=" << trace.summary.attempts_served << '\n';
  return out.str();
}

}  // namespace imd::bdos
