#include <gtest/gtest.h>

#include <cmath>

#include "imd/common/errors.hpp"
#include "imd/common/rng.hpp"
#include "imd/zpd/zpd.hpp"

namespace imd::zpd {
namespace {

using Gate = ZpdGate;

TEST(Capacitor, UsableEnergy) {
  EXPECT_NEAR(usable_energy({470e-6, 2.1, 3.3}), 1.5228e-3, 1e-15);
  EXPECT_EQ(usable_energy({0.0, 2.1, 3.3}), 0.0);
  EXPECT_EQ(usable_energy({470e-6, 3.3, 3.3}), 0.0);
  EXPECT_THROW(usable_energy({-1e-6, 2.1, 3.3}), ArgumentError);
  EXPECT_THROW(usable_energy({1e-6, 3.3, 2.1}), ArgumentError);
}

TEST(Capacitor, RequiredCapacitanceForAuthBudget) {
  const double c = required_capacitance(1.4904e-3, 2.1, 3.3);
  EXPECT_NEAR(c, 460e-6, 460e-6 * 1e-12);
  EXPECT_EQ(required_capacitance(0.0, 2.1, 3.3), 0.0);
  EXPECT_THROW(required_capacitance(1e-3, 3.3, 3.3), ArgumentError);
  EXPECT_THROW(required_capacitance(-1e-3, 2.1, 3.3), ArgumentError);
}

TEST(Capacitor, InversePair) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const CapacitorSpec s{1e-6 + rng.uniform() * 1e-2, 1.0 + rng.uniform(), 2.5 + rng.uniform() * 2};
    const double back = required_capacitance(usable_energy(s), s.v_min, s.v_max);
    ASSERT_NEAR(back, s.capacitance_f, s.capacitance_f * 1e-12);
  }
}

TEST(Capacitor, StandardRounding) {
  EXPECT_EQ(round_to_standard(460e-6), 470e-6);
  EXPECT_EQ(round_to_standard(470e-6), 470e-6);
  EXPECT_EQ(round_to_standard(471e-6), 560e-6);
  EXPECT_EQ(round_to_standard(8.3e-6), 10e-6);
  EXPECT_EQ(round_to_standard(1.0), 1.0);
  EXPECT_EQ(round_to_standard(0.0999), 0.1);
  EXPECT_THROW(round_to_standard(0.0), ArgumentError);
}

TEST(Capacitor, RoundingIdempotentAndNeverDown) {
  Rng rng(4);
  for (int i = 0; i < 2000; ++i) {
    const double c = std::pow(10.0, -9.0 + 8.0 * rng.uniform());
    const double r = round_to_standard(c);
    ASSERT_GE(r, c);
    ASSERT_LT(r, c * 1.25);  // widest E12 gap is 1.0 -> 1.2 (20%)
    ASSERT_EQ(round_to_standard(r), r);
  }
}

TEST(Capacitor, ChargingTime) {
  const HarvesterParams h{6.15e-3};
  const CapacitorSpec s{470e-6, 2.1, 3.3};
  EXPECT_NEAR(charging_time(s, h), 0.41612195, 1e-8);
  EXPECT_NEAR(charging_time(s, h), 0.416, 1e-3);
  EXPECT_NEAR(charging_time(s, h, ChargeMode::UsableWindow), 1.5228e-3 / 6.15e-3, 1e-12);
  EXPECT_EQ(charging_time({0.0, 2.1, 3.3}, h), 0.0);
  EXPECT_DOUBLE_EQ(charging_time(s, HarvesterParams{h.delivered_power_w / 2}), 2 * charging_time(s, h));
  EXPECT_THROW(charging_time(s, HarvesterParams{0.0}), ArgumentError);
}

TEST(Capacitor, ChargeModeNames) {
  EXPECT_EQ(parse_charge_mode("from_empty"), ChargeMode::FromEmpty);
  EXPECT_EQ(parse_charge_mode(to_string(ChargeMode::UsableWindow)), ChargeMode::UsableWindow);
  EXPECT_THROW(parse_charge_mode("full"), ArgumentError);
}

const CapacitorSpec k470{470e-6, 2.1, 3.3};

TEST(Gate, BecomesReadyAfterEnoughHarvest) {
  Gate g(k470, 1.49e-3);
  for (int i = 1; i <= 14; ++i) {
    EXPECT_EQ(g.step(Gate::Harvest{0.1e-3}).state, Gate::State::Harvesting) << i;
  }
  EXPECT_EQ(g.step(Gate::Harvest{0.1e-3}).state, Gate::State::Ready);
}

TEST(Gate, StoredEnergyCappedAtUsable) {
  Gate g(k470, 1e-3);
  g.step(Gate::Harvest{1.0});
  EXPECT_EQ(g.stored_energy(), usable_energy(k470));
}

TEST(Gate, RequestWhileHarvestingIsIgnored) {
  Gate g(k470, 1e-3);
  const auto r = g.step(Gate::AuthRequest{});
  EXPECT_EQ(r.state, Gate::State::Harvesting);
  EXPECT_EQ(r.battery_drawn_j, 0.0);
}

TEST(Gate, FailureDiscardsChargeAndNeverTouchesBattery) {
  Gate g(k470, 1e-3);
  g.step(Gate::Harvest{1.2e-3});
  EXPECT_EQ(g.step(Gate::AuthRequest{}).state, Gate::State::Authenticating);
  EXPECT_NEAR(g.stored_energy(), 0.2e-3, 1e-15);
  EXPECT_EQ(g.step(Gate::AuthFailure{}).state, Gate::State::Rejected);
  EXPECT_EQ(g.stored_energy(), 0.0);
  EXPECT_EQ(g.total_battery_drawn(), 0.0);
  EXPECT_EQ(g.step(Gate::Harvest{0.5e-3}).state, Gate::State::Harvesting);
}

TEST(Gate, SuccessSwitchesToBattery) {
  Gate g(k470, 1e-3);
  g.step(Gate::Harvest{1e-3});
  g.step(Gate::AuthRequest{});
  EXPECT_EQ(g.step(Gate::AuthSuccess{}).state, Gate::State::OnBattery);
  const auto r = g.step(Gate::AuthRequest{});
  EXPECT_EQ(r.state, Gate::State::OnBattery);
  EXPECT_EQ(r.battery_drawn_j, 1e-3);
  EXPECT_EQ(g.total_battery_drawn(), 1e-3);
  g.reset();
  EXPECT_EQ(g.state(), Gate::State::Harvesting);
}

TEST(Gate, InvalidPairsThrowWithoutTransition) {
  Gate g(k470, 1e-3);
  EXPECT_THROW(g.step(Gate::AuthSuccess{}), StateError);
  EXPECT_THROW(g.step(Gate::AuthFailure{}), StateError);
  EXPECT_EQ(g.state(), Gate::State::Harvesting);
  g.step(Gate::Harvest{1e-3});
  g.step(Gate::AuthRequest{});
  EXPECT_THROW(g.step(Gate::AuthRequest{}), StateError);
  EXPECT_THROW(g.step(Gate::Harvest{1e-3}), StateError);
  EXPECT_EQ(g.state(), Gate::State::Authenticating);
  EXPECT_THROW(g.step(Gate::Harvest{-1.0}), ArgumentError);
}

TEST(Gate, RequirementAboveCapacityRejected) {
  EXPECT_THROW(Gate(k470, 2e-3), ArgumentError);
  EXPECT_THROW(Gate(k470, 0.0), ArgumentError);
}

TEST(Gate, NoBatteryDrawWithoutSuccess) {
  // Random walks over every event except AuthSuccess.
  Rng rng(9);
  for (int walk = 0; walk < 200; ++walk) {
    Gate g(k470, 1e-3 + rng.uniform() * 0.5e-3);
    for (int i = 0; i < 200; ++i) {
      Gate::Event e;
      switch (rng.next() % 3) {
        case 0: e = Gate::Harvest{rng.uniform() * 0.5e-3}; break;
        case 1: e = Gate::AuthRequest{}; break;
        default: e = Gate::AuthFailure{}; break;
      }
      try {
        ASSERT_EQ(g.step(e).battery_drawn_j, 0.0);
      } catch (const StateError&) {
      }
    }
    ASSERT_EQ(g.total_battery_drawn(), 0.0);
  }
}

TEST(Sizing, AnchorRow) {
  const auto row = size_capacitor(1.4904e-3, 2.1, 3.3, HarvesterParams{6.15e-3});
  EXPECT_NEAR(row.capacitance_required_f, 460e-6, 460e-6 * 0.01);
  EXPECT_EQ(row.capacitance_standard_f, 470e-6);
  EXPECT_NEAR(row.charge_time_s, 0.416, 1e-3);
  EXPECT_THROW(size_capacitor(0.0, 2.1, 3.3, HarvesterParams{}), ArgumentError);
}

TEST(Sizing, CsvMonotoneInEnergy) {
  std::vector<SizingRow> rows;
  for (double e : {0.5e-3, 1e-3, 1.5e-3, 2e-3}) rows.push_back(size_capacitor(e, 2.1, 3.3, HarvesterParams{}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GT(rows[i].capacitance_required_f, rows[i - 1].capacitance_required_f);
    EXPECT_GE(rows[i].capacitance_standard_f, rows[i - 1].capacitance_standard_f);
    EXPECT_GE(rows[i].charge_time_s, rows[i - 1].charge_time_s);
  }
  const auto csv = sizing_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "E_req_J,C_required_F,C_standard_F,charge_time_s");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

}  // namespace
}  // namespace imd::zpd
