#include "imd/zpd/zpd.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "imd/common/errors.hpp"
#include "imd/common/format.hpp"

namespace imd::zpd {

namespace {

constexpr std::array<int, 12> kE12 = {10, 12, 15, 18, 22, 27, 33, 39, 47, 56, 68, 82};

// v x 10^e with a single correctly rounded operation, so 47e-5 comes out
// bit-identical to the literal 470e-6.
double scaled(int v, int e) {
  double p = 1.0;
  for (int i = 0; i < std::abs(e); ++i) p *= 10.0;
  return e >= 0 ? v * p : v / p;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

void CapacitorSpec::validate() const {
  if (!(capacitance_f >= 0.0) || !std::isfinite(capacitance_f)) throw ArgumentError("capacitance must be >= 0");
  if (!(v_min >= 0.0) || !(v_max >= v_min) || !std::isfinite(v_max)) {
    throw ArgumentError("capacitor voltages must satisfy 0 <= V_min <= V_max");
  }
}

void HarvesterParams::validate() const {
  if (!(delivered_power_w > 0.0) || !std::isfinite(delivered_power_w)) {
    throw ArgumentError("harvester power must be positive");
  }
}

std::string_view to_string(ChargeMode mode) {
  return mode == ChargeMode::FromEmpty ? "from_empty" : "usable_window";
}

ChargeMode parse_charge_mode(std::string_view text) {
  if (text == "from_empty") return ChargeMode::FromEmpty;
  if (text == "usable_window") return ChargeMode::UsableWindow;
  throw ArgumentError("unknown charge mode '" + std::string(text) + "' (expected from_empty or usable_window)");
}

double usable_energy(const CapacitorSpec& spec) {
  spec.validate();
  return 0.5 * spec.capacitance_f * (spec.v_max * spec.v_max - spec.v_min * spec.v_min);
}

double required_capacitance(double energy_j, double v_min, double v_max) {
  if (!(energy_j >= 0.0)) throw ArgumentError("required energy must be non-negative");
  if (!(v_min >= 0.0) || !(v_max > v_min)) throw ArgumentError("voltage window is empty: need 0 <= V_min < V_max");
  return 2.0 * energy_j / (v_max * v_max - v_min * v_min);
}

double round_to_standard(double capacitance_f) {
  if (!(capacitance_f > 0.0) || !std::isfinite(capacitance_f)) throw ArgumentError("capacitance must be positive");
  const int decade = static_cast<int>(std::floor(std::log10(capacitance_f)));
  for (int e = decade - 2; e <= decade + 1; ++e) {
    for (int v : kE12) {
      double candidate = scaled(v, e);
      if (candidate >= capacitance_f) return candidate;
    }
  }
  return scaled(10, decade + 2);
}

double charging_time(const CapacitorSpec& spec, const HarvesterParams& harvester, ChargeMode mode) {
  spec.validate();
  harvester.validate();
  const double energy =
      mode == ChargeMode::FromEmpty ? 0.5 * spec.capacitance_f * spec.v_max * spec.v_max : usable_energy(spec);
  return energy / harvester.delivered_power_w;
}

// --- Gate -----------------------------------------------------------------

std::string_view to_string(ZpdGate::State state) {
  switch (state) {
    case ZpdGate::State::Harvesting: return "Harvesting";
    case ZpdGate::State::Ready: return "Ready";
    case ZpdGate::State::Authenticating: return "Authenticating";
    case ZpdGate::State::OnBattery: return "OnBattery";
    case ZpdGate::State::Rejected: return "Rejected";
  }
  return "?";
}

ZpdGate::ZpdGate(CapacitorSpec spec, double required_energy_j)
    : spec_(spec), capacity_j_(usable_energy(spec)), required_j_(required_energy_j) {
  if (!(required_j_ > 0.0)) throw ArgumentError("gate required energy must be positive");
  if (required_j_ > capacity_j_) {
    throw ArgumentError("capacitor usable energy is below the authentication requirement");
  }
}

ZpdGate::StepResult ZpdGate::step(const Event& event) {
  auto invalid = [this](const char* ev) -> StepResult {
    throw StateError(std::string("ZPD gate: ") + ev + " is not valid in state " + std::string(to_string(state_)));
  };
  double drawn = 0.0;

  std::visit(
      Overloaded{
          [&](const Harvest& h) {
            if (!(h.joules >= 0.0)) throw ArgumentError("harvested energy must be non-negative");
            switch (state_) {
              case State::Harvesting:
              case State::Rejected:
              case State::Ready:
                stored_j_ = std::min(stored_j_ + h.joules, capacity_j_);
                state_ = stored_j_ >= required_j_ ? State::Ready : State::Harvesting;
                break;
              case State::OnBattery: break;
              case State::Authenticating: invalid("harvest");
            }
          },
          [&](const AuthRequest&) {
            switch (state_) {
              case State::Harvesting:
              case State::Rejected: break;
              case State::Ready:
                stored_j_ -= required_j_;
                state_ = State::Authenticating;
                break;
              case State::OnBattery: drawn = required_j_; break;
              case State::Authenticating: invalid("auth_request");
            }
          },
          [&](const AuthSuccess&) {
            if (state_ != State::Authenticating) invalid("auth_success");
            state_ = State::OnBattery;
          },
          [&](const AuthFailure&) {
            if (state_ != State::Authenticating) invalid("auth_failure");
            stored_j_ = 0.0;
            state_ = State::Rejected;
          },
      },
      event);

  battery_drawn_j_ += drawn;
  return StepResult{state_, drawn};
}

void ZpdGate::reset() {
  state_ = State::Harvesting;
  stored_j_ = 0.0;
}

// --- Sizing report --------------------------------------------------------

SizingRow size_capacitor(double energy_j, double v_min, double v_max, const HarvesterParams& harvester,
                         ChargeMode mode) {
  if (!(energy_j > 0.0)) throw ArgumentError("required energy must be positive");
  SizingRow row;
  row.energy_required_j = energy_j;
  row.capacitance_required_f = required_capacitance(energy_j, v_min, v_max);
  row.capacitance_standard_f = round_to_standard(row.capacitance_required_f);
  row.charge_time_s = charging_time(CapacitorSpec{row.capacitance_standard_f, v_min, v_max}, harvester, mode);
  return row;
}

std::string sizing_csv(const std::vector<SizingRow>& rows) {
  std::ostringstream out;
  out << "E_req_J,C_required_F,C_standard_F,charge_time_s\n";
  for (const auto& r : rows) {
    out << format_number(r.energy_required_j) << ',' << format_number(r.capacitance_required_f) << ','
        << format_number(r.capacitance_standard_f) << ',' << format_number(r.charge_time_s) << '\n';
  }
  return out.str();
}

}  // namespace imd::zpd
