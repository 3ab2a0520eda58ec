// End-to-end acceptance checks. One PASS/FAIL line per criterion; exit code
// is non-zero if any criterion fails.
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cli.hpp"
#include "imd/battery/lifetime.hpp"
#include "imd/bdos/sim.hpp"
#include "imd/cipher/block_cipher.hpp"
#include "imd/cipher/kat.hpp"
#include "imd/cipher/p256.hpp"
#include "imd/common/rng.hpp"
#include "imd/energy/model.hpp"
#include "imd/map/session.hpp"
#include "imd/zpd/zpd.hpp"

namespace {

using namespace imd;
using cipher::CipherId;
using cipher::CipherSuite;
using cipher::ExecutionTarget;

// Tolerances.
constexpr double kCapacitanceRelTol = 0.01;   // 460 uF +/- 1%
constexpr double kChargeTimeTolS = 1e-3;      // 416 ms +/- 1 ms
constexpr double kEcdhShareLimit = 0.005;     // < 0.5% of daily energy
constexpr int kRoundTrips = 1000;
constexpr int kDhPairs = 1000;
constexpr int kTamperTrials = 1000;
constexpr int kKeyMismatchTrials = 1000;
constexpr int kOracleScenarios = 20;

struct Outcome {
  bool pass = true;
  std::string detail;
};

const CipherSuite kAesPeriph(CipherId::Aes128, ExecutionTarget::CryptoPeripheral);

cli::ScenarioConfig preset() { return cli::ScenarioConfig::from_file(ConfigFile::load(IMD_TEST_PRESET)); }

// 1 -----------------------------------------------------------------------
Outcome zpd_anchor() {
  const auto sc = preset();
  const double c_req = zpd::required_capacitance(sc.ereq_j, sc.capacitor.v_min, sc.capacitor.v_max);
  const double c_std = zpd::round_to_standard(c_req);
  const double t = zpd::charging_time({c_std, sc.capacitor.v_min, sc.capacitor.v_max}, sc.harvester);
  Outcome o;
  o.pass = sc.ereq_j == 1.4904e-3 && sc.capacitor.v_min == 2.1 && sc.capacitor.v_max == 3.3 &&
           sc.harvester.delivered_power_w == 6.15e-3 && std::abs(c_req - 460e-6) <= 460e-6 * kCapacitanceRelTol &&
           c_std == 470e-6 && std::abs(t - 0.416) <= kChargeTimeTolS;
  o.detail = fmt::format("E_req={} J C_req={:.6g} F C_std={} F t_charge={:.6g} s", sc.ereq_j, c_req, c_std, t);
  return o;
}

// 2 -----------------------------------------------------------------------
Outcome ecdh_constant() {
  const auto sc = preset();
  const auto& m = sc.model;
  Outcome o;
  o.pass = energy::CryptoCostTable{}.key_exchange_energy() == 1457e-6 && energy::key_exchange_energy(m.crypto) == 1457e-6;
  double worst = 0.0;
  for (const auto& s : sc.suites) {
    const double map_total = energy::map_session_energy(m.crypto, m.mcu, m.radio, s).total_j;
    const double secured = energy::secured_session_energy(m.crypto, m.mcu, m.radio, s);
    worst = std::max(worst, std::abs(secured - (map_total + 1457e-6)));
  }
  o.pass = o.pass && worst == 0.0;
  o.detail = fmt::format("key_exchange={} J max|secured-(MAP+ECDH)|={}", energy::key_exchange_energy(m.crypto), worst);
  return o;
}

// 3 -----------------------------------------------------------------------
Outcome orderings() {
  const auto sc = preset();
  const auto& m = sc.model;
  auto total = [&](const CipherSuite& s) { return energy::map_session_energy(m.crypto, m.mcu, m.radio, s).total_j; };
  const CipherSuite aes_cpu(CipherId::Aes128, ExecutionTarget::Cpu);
  const CipherSuite speck(CipherId::Speck128_128, ExecutionTarget::Cpu);
  const CipherSuite misty(CipherId::Misty1, ExecutionTarget::Cpu);

  const bool a = total(aes_cpu) > total(speck) && total(aes_cpu) > total(misty);
  bool b = true;
  for (const auto& s : sc.suites) b = b && (s == kAesPeriph || total(kAesPeriph) < total(s));

  const auto rows = battery::lifetime_sweep(sc.batteries, sc.suites, sc.usage, m);
  bool c = true, d = true;
  for (const auto& bat : sc.batteries) {
    double none = 0, periph = 0, best_other = 0;
    for (const auto& r : rows) {
      if (r.battery.capacity_j != bat.capacity_j) continue;
      const double y = *r.years;
      if (r.security.is_none()) none = y;
      else if (*r.security.suite() == kAesPeriph) periph = y;
      else best_other = std::max(best_other, y);
    }
    c = c && periph > best_other;
    d = d && none >= std::max(periph, best_other);
  }
  Outcome o;
  o.pass = a && b && c && d;
  o.detail = fmt::format("(a)={} (b)={} (c)={} (d)={} totals uJ: AES-CPU={:.4g} SPECK={:.4g} MISTY1={:.4g} AES-periph={:.4g}",
                         a, b, c, d, total(aes_cpu) * 1e6, total(speck) * 1e6, total(misty) * 1e6,
                         total(kAesPeriph) * 1e6);
  return o;
}

// 4 -----------------------------------------------------------------------
Outcome amortization() {
  const auto sc = preset();
  double worst = 0.0;
  for (const auto& s : sc.suites) {
    const double daily = battery::daily_energy(sc.usage, sc.model, battery::SecurityChoice::map(s)).total_j;
    worst = std::max(worst, 1.457e-3 / daily);
  }
  Outcome o;
  o.pass = worst < kEcdhShareLimit;
  o.detail = fmt::format("max ECDH share of daily energy={:.4g}% (limit {}%)", worst * 100, kEcdhShareLimit * 100);
  return o;
}

// 5 -----------------------------------------------------------------------
Outcome crypto_correctness() {
  const auto report = cipher::run_kat_directory(IMD_TEST_FIXTURES_DIR);
  Rng rng(5);
  int rt_fail = 0;
  for (auto id : cipher::kAllCiphers) {
    for (int i = 0; i < kRoundTrips; ++i) {
      const auto key = cipher::SymmetricKey::random(rng);
      Bytes block(cipher::block_size(id));
      rng.fill(block);
      if (cipher::decrypt_block(id, key, cipher::encrypt_block(id, key, block)) != block) ++rt_fail;
    }
  }
  int dh_fail = 0;
  for (int i = 0; i < kDhPairs; ++i) {
    const auto a = cipher::generate_keypair(rng);
    const auto b = cipher::generate_keypair(rng);
    if (cipher::shared_secret(a, b.public_point()) != cipher::shared_secret(b, a.public_point())) ++dh_fail;
  }
  Outcome o;
  o.pass = report.all_passed() && rt_fail == 0 && dh_fail == 0;
  o.detail = fmt::format("KAT {}/{} round-trip failures={}/{} DH asymmetric={}/{}",
                         report.results.size() - report.failures(), report.results.size(), rt_fail,
                         kRoundTrips * 3, dh_fail, kDhPairs);
  return o;
}

// 6 -----------------------------------------------------------------------
Outcome protocol_soundness() {
  const map::DeviceId id{0x1d, 0, 0, 1};
  const map::Command cmd{'R', 'E', 'A', 'D'};
  const map::Response resp{1, 2, 3, 4, 5, 6, 7, 8};
  const std::vector<CipherSuite> suites{{CipherId::Speck128_128, ExecutionTarget::Cpu},
                                        {CipherId::Misty1, ExecutionTarget::Cpu},
                                        {CipherId::Aes128, ExecutionTarget::Cpu}};
  Rng rng(6);
  int honest_fail = 0, m3_accepts = 0, m4_accepts = 0, replay_accepts = 0, mismatch_accepts = 0;

  auto flip = [&](Bytes& b) {
    const auto bit = rng.next() % (b.size() * 8);
    b[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
  };

  for (const auto& suite : suites) {
    {
      const auto key = cipher::SymmetricKey::random(rng);
      map::ReaderSession r(suite, key, id);
      map::ImplantSession i(suite, key, id, resp);
      try {
        const auto m4 = i.on_token2(r.on_challenge(i.on_request(r.start(cmd), rng), rng));
        if (r.on_token3(m4) != resp || i.command() != cmd) ++honest_fail;
      } catch (const std::exception&) {
        ++honest_fail;
      }
    }
    for (int t = 0; t < kTamperTrials; ++t) {
      const auto key = cipher::SymmetricKey::random(rng);
      map::ReaderSession r(suite, key, id);
      map::ImplantSession i(suite, key, id, resp);
      auto m3 = r.on_challenge(i.on_request(r.start(cmd), rng), rng);
      flip(m3);
      try {
        i.on_token2(m3);
        ++m3_accepts;
      } catch (const std::exception&) {
      }
    }
    for (int t = 0; t < kTamperTrials; ++t) {
      const auto key = cipher::SymmetricKey::random(rng);
      map::ReaderSession r(suite, key, id);
      map::ImplantSession i(suite, key, id, resp);
      auto m4 = i.on_token2(r.on_challenge(i.on_request(r.start(cmd), rng), rng));
      flip(m4);
      try {
        r.on_token3(m4);
        ++m4_accepts;
      } catch (const std::exception&) {
      }
    }
    {
      // Tokens from a completed session replayed into fresh sessions.
      const auto key = cipher::SymmetricKey::random(rng);
      map::ReaderSession r1(suite, key, id);
      map::ImplantSession i1(suite, key, id, resp);
      const auto m1 = r1.start(cmd);
      const auto m3 = r1.on_challenge(i1.on_request(m1, rng), rng);
      const auto m4 = i1.on_token2(m3);
      r1.on_token3(m4);

      map::ImplantSession i2(suite, key, id, resp);
      i2.on_request(m1, rng);
      try {
        i2.on_token2(m3);
        ++replay_accepts;
      } catch (const std::exception&) {
      }
      map::ReaderSession r2(suite, key, id);
      map::ImplantSession i3(suite, key, id, resp);
      r2.on_challenge(i3.on_request(r2.start(cmd), rng), rng);
      try {
        r2.on_token3(m4);
        ++replay_accepts;
      } catch (const std::exception&) {
      }
    }
    for (int t = 0; t < kKeyMismatchTrials; ++t) {
      map::ReaderSession r(suite, cipher::SymmetricKey::random(rng), id);
      map::ImplantSession i(suite, cipher::SymmetricKey::random(rng), id, resp);
      try {
        r.on_token3(i.on_token2(r.on_challenge(i.on_request(r.start(cmd), rng), rng)));
        ++mismatch_accepts;
      } catch (const std::exception&) {
      }
    }
  }
  Outcome o;
  o.pass = honest_fail == 0 && m3_accepts == 0 && m4_accepts == 0 && replay_accepts == 0 && mismatch_accepts == 0;
  o.detail = fmt::format(
      "honest failures={} tampered M3 accepts={}/{} tampered M4 accepts={}/{} replay accepts={} key-mismatch "
      "co-accepts={}/{}",
      honest_fail, m3_accepts, kTamperTrials * 3, m4_accepts, kTamperTrials * 3, replay_accepts, mismatch_accepts,
      kKeyMismatchTrials * 3);
  return o;
}

// 7 -----------------------------------------------------------------------
Outcome simulator_oracle() {
  Rng rng(7);
  double worst_ticks = 0.0;
  bool all_depleted = true;
  for (int i = 0; i < kOracleScenarios; ++i) {
    bdos::AttackScenario s;
    s.rate_hz = 0.5 + rng.uniform() * 200;
    s.per_request_j = 1e-5 + rng.uniform() * 2e-3;
    s.sleep_power_w = rng.uniform() < 0.3 ? 0.0 : rng.uniform() * 1e-3;
    s.battery_j = 1.0 + rng.uniform() * 50;
    s.tick_s = 1e-3;
    s.duration_s = 1e9;
    s.record_events = false;
    s.sample_interval_s = 0;
    s.seed = rng.next();
    const auto t = bdos::simulate(s);
    const double a = *bdos::time_to_depletion_analytic(s.battery_j, s.per_request_j, s.rate_hz, s.sleep_power_w);
    if (!t.summary.depleted_at_s) {
      all_depleted = false;
      continue;
    }
    worst_ticks = std::max(worst_ticks, std::abs(*t.summary.depleted_at_s - a) / s.tick_s);
  }

  const auto sc = preset();
  bool zpd_ok = true;
  double worst_attack = 0.0;
  for (double rate : {0.1, 1.0, 10.0, 100.0}) {
    bdos::AttackScenario s;
    s.defense = bdos::Defense::Zpd;
    s.rate_hz = rate;
    s.duration_s = 600.0;
    s.battery_j = sc.batteries[sc.attack.battery_index].capacity_j;
    s.sleep_power_w = sc.model.mcu.sleep_power_w;
    s.per_request_j = bdos::per_request_energy(sc.model, kAesPeriph);
    s.capacitor = sc.capacitor;
    s.harvester = sc.harvester;
    s.record_events = false;
    const auto t = bdos::simulate(s);
    worst_attack = std::max(worst_attack, t.summary.attack_drain_j);
    zpd_ok = zpd_ok && t.summary.attack_drain_j == 0.0 &&
             t.summary.battery_consumed_j == s.sleep_power_w * s.duration_s && t.summary.attempts_served > 0;
  }
  Outcome o;
  o.pass = all_depleted && worst_ticks <= 1.0 && zpd_ok;
  o.detail = fmt::format("no-defense worst |sim-oracle|={:.3g} ticks over {} scenarios; ZPD attack drain max={} J, "
                         "total==sleep*duration: {}",
                         worst_ticks, kOracleScenarios, worst_attack, zpd_ok);
  return o;
}

// 8 -----------------------------------------------------------------------
Outcome determinism() {
  const std::vector<std::vector<std::string>> commands{
      {"kat", "--fixtures", IMD_TEST_FIXTURES_DIR},
      {"demo", "--seed", "42"},
      {"demo", "--seed", "42", "--cipher", "MISTY1", "--tamper"},
      {"fig1"},
      {"fig2"},
      {"fig3"},
      {"bdos", "--seed", "42"},
      {"bdos", "--seed", "42", "--arrivals", "poisson", "--defense", "zpd", "--rate", "50"},
  };
  auto run = [](std::vector<std::string> args) {
    args.insert(args.begin(), "imd-guard");
    args.push_back("--config");
    args.push_back(IMD_TEST_PRESET);
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::make_pair(code, out.str());
  };
  int identical = 0;
  std::string differing;
  for (const auto& c : commands) {
    const auto a = run(c), b = run(c);
    if (a == b && !a.second.empty() && a.first != cli::kConfigError) {
      ++identical;
    } else {
      differing += " " + c[0];
    }
  }
  Outcome o;
  o.pass = identical == static_cast<int>(commands.size());
  o.detail = fmt::format("{}/{} command runs byte-identical{}", identical, commands.size(),
                         differing.empty() ? "" : " (differs:" + differing + ")");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"ZPD anchor reproduction", zpd_anchor},
      {"ECDH constant and additivity", ecdh_constant},
      {"cost and lifetime orderings", orderings},
      {"key-exchange amortization", amortization},
      {"crypto correctness", crypto_correctness},
      {"protocol soundness", protocol_soundness},
      {"simulator-oracle equivalence", simulator_oracle},
      {"determinism", determinism},
  };
  int failures = 0;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
  }
  std::printf("%d/%d acceptance criteria passed\n", n - failures, n);
  return failures == 0 ? 0 : 1;
}
