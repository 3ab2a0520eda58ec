#include <gtest/gtest.h>

#include "imd/battery/lifetime.hpp"
#include "imd/common/errors.hpp"
#include "imd/energy/preset.hpp"

namespace imd::battery {
namespace {

using cipher::CipherId;
using cipher::CipherSuite;
using cipher::ExecutionTarget;

struct Preset {
  energy::EnergyModel model;
  std::vector<CipherSuite> suites;
};

Preset load() {
  const auto cfg = ConfigFile::load(IMD_TEST_PRESET);
  Preset p{energy::energy_model_from_config(cfg), {}};
  p.suites = energy::suites_from_config(cfg, p.model.crypto);
  return p;
}

TEST(Battery, FromChargeConvertsToJoules) {
  EXPECT_DOUBLE_EQ(BatteryConfig::from_charge(1.0, 2.8).capacity_j, 10080.0);
  EXPECT_THROW(BatteryConfig::from_charge(0.0, 2.8), ArgumentError);
  EXPECT_THROW(BatteryConfig::from_charge(1.0, -1.0), ArgumentError);
}

TEST(Battery, LifetimeYears) {
  const BatteryConfig b{365.25 * 10.0};
  EXPECT_DOUBLE_EQ(*lifetime_years(b, 1.0), 10.0);
  EXPECT_FALSE(lifetime_years(b, 0.0).has_value());
  EXPECT_THROW(lifetime_years(b, -1.0), ArgumentError);
}

TEST(Battery, LifetimeScalesLinearlyWithCapacity) {
  EXPECT_DOUBLE_EQ(*lifetime_years({2000.0}, 3.0), 2.0 * *lifetime_years({1000.0}, 3.0));
}

TEST(Battery, DailyEnergyTerms) {
  const auto p = load();
  UsageProfile u;
  const auto none = daily_energy(u, p.model, SecurityChoice::none());
  EXPECT_DOUBLE_EQ(none.medical_j, 0.05 * 86400 * 1e-3 + 0.95 * 86400 * 3e-6);
  EXPECT_DOUBLE_EQ(none.radio_j, 120 * 5e-3);
  EXPECT_EQ(none.security_j, 0.0);

  const CipherSuite aes(CipherId::Aes128, ExecutionTarget::CryptoPeripheral);
  const auto sec = daily_energy(u, p.model, SecurityChoice::map(aes));
  EXPECT_NEAR(sec.security_j, 33.4e-6 + 1457e-6, 1e-12);
  EXPECT_EQ(sec.medical_j, none.medical_j);
  EXPECT_EQ(sec.radio_j, none.radio_j);
  EXPECT_DOUBLE_EQ(sec.total_j, sec.medical_j + sec.radio_j + sec.security_j);
}

TEST(Battery, NonPessimisticRadioLeavesOnlyTranscript) {
  const auto p = load();
  UsageProfile u;
  u.radio_active_throughout_session = false;
  EXPECT_EQ(daily_energy(u, p.model, SecurityChoice::none()).radio_j, 0.0);
}

TEST(Battery, ProfileValidation) {
  UsageProfile u;
  u.duty_cycle = 1.5;
  EXPECT_THROW(u.validate(), ArgumentError);
  u = UsageProfile{};
  u.session_minutes_per_day = 2000;
  EXPECT_THROW(u.validate(), ArgumentError);
}

TEST(Battery, Labels) {
  UsageProfile u;
  const CipherSuite s(CipherId::Misty1, ExecutionTarget::Cpu);
  EXPECT_EQ(SecurityChoice::none().label(u), "NONE");
  EXPECT_EQ(SecurityChoice::map(s).label(u), "MAP+ECDH");
  u.key_exchanges_per_day = 0;
  EXPECT_EQ(SecurityChoice::map(s).label(u), "MAP");
}

TEST(Battery, SweepShapeAndOrder) {
  const auto p = load();
  const std::vector<BatteryConfig> bats{{20000.0}, {5040.0}};
  const auto rows = lifetime_sweep(bats, p.suites, UsageProfile{}, p.model);
  ASSERT_EQ(rows.size(), 2u * (p.suites.size() + 1));
  EXPECT_EQ(rows.front().battery.capacity_j, 5040.0);
  EXPECT_TRUE(rows.front().security.is_none());
  EXPECT_EQ(rows.back().battery.capacity_j, 20000.0);
  EXPECT_EQ(*rows.back().security.suite(), CipherSuite(CipherId::Aes128, ExecutionTarget::CryptoPeripheral));
  EXPECT_THROW(lifetime_sweep({}, p.suites, UsageProfile{}, p.model), ArgumentError);
  EXPECT_THROW(lifetime_sweep(bats, {}, UsageProfile{}, p.model), ArgumentError);
}

TEST(Battery, PresetOrderings) {
  const auto p = load();
  std::vector<BatteryConfig> bats;
  for (double ah : {0.5, 1.0, 1.5, 2.0}) bats.push_back(BatteryConfig::from_charge(ah, 2.8));
  const auto rows = lifetime_sweep(bats, p.suites, UsageProfile{}, p.model);
  for (const auto& b : bats) {
    double none_years = 0, best = 0;
    std::optional<CipherSuite> best_suite;
    for (const auto& r : rows) {
      if (r.battery.capacity_j != b.capacity_j) continue;
      if (r.security.is_none()) {
        none_years = *r.years;
      } else if (*r.years > best) {
        best = *r.years;
        best_suite = *r.security.suite();
      }
    }
    EXPECT_EQ(*best_suite, CipherSuite(CipherId::Aes128, ExecutionTarget::CryptoPeripheral));
    EXPECT_GE(none_years, best);
  }
}

TEST(Battery, CsvFormat) {
  const auto p = load();
  const auto rows = lifetime_sweep({{10080.0}}, {p.suites.back()}, UsageProfile{}, p.model);
  const auto csv = lifetime_csv(rows, UsageProfile{});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "battery_J,security,cipher,target,daily_J,lifetime_years");
  EXPECT_NE(csv.find("\n10080,NONE,-,-,"), std::string::npos);
  EXPECT_NE(csv.find("\n10080,MAP+ECDH,AES128,CryptoPeripheral,"), std::string::npos);
}

}  // namespace
}  // namespace imd::battery
