#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace imd::zpd {

inline constexpr double kDefaultVMin = 2.1;
inline constexpr double kDefaultVMax = 3.3;
inline constexpr double kDefaultHarvesterPowerW = 6.15e-3;

struct CapacitorSpec {
  double capacitance_f = 0.0;
  double v_min = kDefaultVMin;
  double v_max = kDefaultVMax;

  // capacitance >= 0, 0 <= v_min <= v_max. Throws ArgumentError.
  void validate() const;
};

struct HarvesterParams {
  double delivered_power_w = kDefaultHarvesterPowerW;

  void validate() const;
};

enum class ChargeMode {
  FromEmpty,     // 0 V -> V_max every time
  UsableWindow,  // V_min -> V_max; the capacitor never drops below V_min
};

std::string_view to_string(ChargeMode mode);
// "from_empty" | "usable_window"; ArgumentError otherwise.
ChargeMode parse_charge_mode(std::string_view text);

// 1/2 C (V_max^2 - V_min^2)
double usable_energy(const CapacitorSpec& spec);

// 2 E / (V_max^2 - V_min^2). Throws ArgumentError when the voltage window is
// empty or the energy is negative.
double required_capacitance(double energy_j, double v_min, double v_max);

// Smallest E12 value >= c. Exact decimal values map to themselves.
double round_to_standard(double capacitance_f);

// Constant delivered power: 1/2 C V_max^2 / P from empty, or the usable
// window energy / P.
double charging_time(const CapacitorSpec& spec, const HarvesterParams& harvester,
                     ChargeMode mode = ChargeMode::FromEmpty);

/// Zero-power-defense gate. Authentication runs from harvested charge; the
/// battery is only touched after a successful authentication.
class ZpdGate {
 public:
  enum class State { Harvesting, Ready, Authenticating, OnBattery, Rejected };

  struct Harvest {
    double joules = 0.0;
  };
  struct AuthRequest {};
  struct AuthSuccess {};
  struct AuthFailure {};
  using Event = std::variant<Harvest, AuthRequest, AuthSuccess, AuthFailure>;

  struct StepResult {
    State state;
    double battery_drawn_j = 0.0;
  };

  // Throws ArgumentError when the required energy exceeds what the
  // capacitor can hold, since the gate could then never become Ready.
  ZpdGate(CapacitorSpec spec, double required_energy_j);

  /// Transitions:
  ///   Harvesting/Rejected + harvest  -> accumulate (capped at usable energy);
  ///                                     Ready once stored >= required
  ///   Harvesting/Rejected + request  -> no change
  ///   Ready + harvest                -> Ready (cap)
  ///   Ready + request                -> Authenticating, capacitor pays
  ///   Authenticating + success       -> OnBattery
  ///   Authenticating + failure       -> Rejected, stored charge discarded
  ///   OnBattery + request            -> OnBattery, battery pays
  ///   OnBattery + harvest            -> no change
  /// Any other pair throws StateError and leaves the gate untouched.
  StepResult step(const Event& event);

  // Back to Harvesting with an empty capacitor (session end).
  void reset();

  State state() const { return state_; }
  double stored_energy() const { return stored_j_; }
  double required_energy() const { return required_j_; }
  double total_battery_drawn() const { return battery_drawn_j_; }
  const CapacitorSpec& spec() const { return spec_; }

 private:
  CapacitorSpec spec_;
  double capacity_j_;
  double required_j_;
  State state_ = State::Harvesting;
  double stored_j_ = 0.0;
  double battery_drawn_j_ = 0.0;
};

std::string_view to_string(ZpdGate::State state);

struct SizingRow {
  double energy_required_j = 0.0;
  double capacitance_required_f = 0.0;
  double capacitance_standard_f = 0.0;
  double charge_time_s = 0.0;
};

// Sizing for one required energy: exact capacitance, its E12 rounding, and
// the charge time of the rounded part. Throws ArgumentError unless E > 0.
SizingRow size_capacitor(double energy_j, double v_min, double v_max, const HarvesterParams& harvester,
                         ChargeMode mode = ChargeMode::FromEmpty);

// Header E_req_J,C_required_F,C_standard_F,charge_time_s
std::string sizing_csv(const std::vector<SizingRow>& rows);

}  // namespace imd::zpd
