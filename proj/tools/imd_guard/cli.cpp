#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "imd/cipher/kat.hpp"
#include "imd/cipher/p256.hpp"
#include "imd/common/errors.hpp"
#include "imd/common/format.hpp"
#include "imd/common/rng.hpp"
#include "imd/energy/preset.hpp"
#include "imd/map/session.hpp"

#ifndef IMD_GUARD_DEFAULT_CONFIG
#define IMD_GUARD_DEFAULT_CONFIG "presets/energy.cfg"
#endif
#ifndef IMD_GUARD_DEFAULT_FIXTURES
#define IMD_GUARD_DEFAULT_FIXTURES "fixtures"
#endif

namespace imd::cli {

namespace {

std::size_t parse_index(const ConfigFile& cfg, const char* section, const char* key) {
  const double v = cfg.get_double(section, key);
  if (!(v >= 0.0) || v != std::floor(v)) throw ArgumentError(std::string(key) + " must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

ScenarioConfig ScenarioConfig::from_file(ConfigFile file) {
  ScenarioConfig sc;
  try {
    sc.model = energy::energy_model_from_config(file);
    sc.suites = energy::suites_from_config(file, sc.model.crypto);

    const double volts = file.get_double("battery", "nominal_v");
    for (double ah : file.get_double_list("battery", "sizes_ah")) {
      sc.batteries.push_back(battery::BatteryConfig::from_charge(ah, volts));
    }
    if (sc.batteries.empty()) throw ArgumentError("[battery] sizes_ah is empty");

    sc.usage.duty_cycle = file.get_double("usage", "duty_cycle");
    sc.usage.session_minutes_per_day = file.get_double("usage", "session_minutes_per_day");
    sc.usage.sessions_per_day = file.get_double("usage", "sessions_per_day");
    sc.usage.key_exchanges_per_day = file.get_double("usage", "key_exchanges_per_day");
    sc.usage.radio_active_throughout_session = file.get_bool("usage", "radio_active_throughout_session");
    sc.usage.validate();

    sc.capacitor.capacitance_f = file.get_double("zpd", "capacitance_f");
    sc.capacitor.v_min = file.get_double("zpd", "v_min");
    sc.capacitor.v_max = file.get_double("zpd", "v_max");
    sc.capacitor.validate();
    sc.charge_mode = zpd::parse_charge_mode(file.get_string("zpd", "charge_mode"));
    sc.ereq_j = file.get_double("zpd", "ereq_j");
    if (!(sc.ereq_j > 0.0)) throw ArgumentError("[zpd] ereq_j must be positive");
    sc.ereq_sweep_j = file.get_double_list("zpd", "ereq_sweep_j");
    for (double e : sc.ereq_sweep_j) {
      if (!(e > 0.0)) throw ArgumentError("[zpd] ereq_sweep_j entries must be positive");
    }

    sc.harvester.delivered_power_w = file.get_double("harvester", "delivered_power_w");
    sc.harvester.validate();

    auto& a = sc.attack;
    a.rate_hz = file.get_double("attack", "rate_hz");
    a.duration_s = file.get_double("attack", "duration_s");
    a.defense = bdos::parse_defense(file.get_string("attack", "defense"));
    a.arrivals = bdos::parse_arrivals(file.get_string("attack", "arrivals"));
    a.suite = cipher::CipherSuite::parse(file.get_string("attack", "suite"));
    if (!sc.model.crypto.contains(*a.suite)) {
      throw ArgumentError("[attack] suite " + a.suite->name() + " has no [crypto_block_j] entry");
    }
    a.tick_s = file.get_double("attack", "tick_s");
    a.sample_interval_s = file.get_double("attack", "sample_interval_s");
    a.battery_index = parse_index(file, "attack", "battery_index");
    if (a.battery_index >= sc.batteries.size()) throw ArgumentError("[attack] battery_index out of range");
    if (!(a.rate_hz >= 0.0)) throw ArgumentError("[attack] rate_hz must be >= 0");
    if (!(a.duration_s > 0.0)) throw ArgumentError("[attack] duration_s must be > 0");
    if (!(a.tick_s > 0.0)) throw ArgumentError("[attack] tick_s must be > 0");
    if (!(a.sample_interval_s >= 0.0)) throw ArgumentError("[attack] sample_interval_s must be >= 0");
  } catch (const ArgumentError& e) {
    throw ConfigError(file.source() + ": " + e.what());
  }
  sc.file = std::move(file);
  return sc;
}

std::vector<std::string> ScenarioConfig::keys_without_provenance() const {
  std::vector<std::string> missing;
  for (const auto& [section, key] : file.keys()) {
    if (!file.entry(section, key).provenance) missing.push_back(section + "." + key);
  }
  return missing;
}

std::filesystem::path resolve_config_path(const CliOptions& opts) {
  if (opts.config_path) return *opts.config_path;
  if (const char* env = std::getenv("IMD_GUARD_CONFIG"); env != nullptr && *env != '\0') return env;
  return IMD_GUARD_DEFAULT_CONFIG;
}

ScenarioConfig load_scenario(const CliOptions& opts) {
  auto file = ConfigFile::load(resolve_config_path(opts));
  if (opts.rate_hz) file.set("attack", "rate_hz", format_number(*opts.rate_hz));
  if (opts.duration_s) file.set("attack", "duration_s", format_number(*opts.duration_s));
  if (opts.defense) file.set("attack", "defense", *opts.defense);
  if (opts.arrivals) file.set("attack", "arrivals", *opts.arrivals);
  if (opts.cipher || opts.target) {
    const auto current = cipher::CipherSuite::parse(file.get_string("attack", "suite"));
    const std::string c = opts.cipher ? *opts.cipher : std::string(cipher::to_string(current.cipher()));
    const std::string t = opts.target ? *opts.target : std::string("CPU");
    file.set("attack", "suite", c + "/" + t);
  }
  if (opts.ereq_j) file.set("zpd", "ereq_j", format_number(*opts.ereq_j));
  return ScenarioConfig::from_file(std::move(file));
}

// --- kat ---------------------------------------------------------------------

int cmd_kat(const CliOptions& opts, std::ostream& out) {
  const std::filesystem::path dir = opts.fixtures_dir ? *opts.fixtures_dir : IMD_GUARD_DEFAULT_FIXTURES;
  const auto report = cipher::run_kat_directory(dir);
  for (const auto& r : report.results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.file << ':' << r.line;
    if (!r.passed && !r.detail.empty()) out << ' ' << r.detail;
    out << '\n';
  }
  const auto total = report.results.size();
  out << "kat: " << (total - report.failures()) << '/' << total << " vectors passed\n";
  return report.all_passed() ? kOk : kCheckFailed;
}

// --- demo --------------------------------------------------------------------

namespace {

cipher::CipherSuite demo_suite(const CliOptions& opts) {
  const std::string c = opts.cipher ? *opts.cipher : "AES128";
  const std::string t = opts.target ? *opts.target : (c == "AES128" && !opts.cipher ? "CryptoPeripheral" : "CPU");
  return cipher::CipherSuite::parse(c + "/" + t);
}

void print_message(std::ostream& out, const char* label, const char* direction, const Bytes& wire) {
  out << label << ' ' << direction << ' ' << wire.size() << " bytes " << to_hex(wire) << '\n';
}

}  // namespace

int cmd_demo(const CliOptions& opts, std::ostream& out) {
  const auto suite = demo_suite(opts);
  Rng rng(opts.seed);

  const auto reader_kp = cipher::generate_keypair(rng);
  const auto implant_kp = cipher::generate_keypair(rng);
  const auto z_reader = cipher::shared_secret(reader_kp, implant_kp.public_point());
  const auto z_implant = cipher::shared_secret(implant_kp, reader_kp.public_point());
  out << "suite " << suite.name() << '\n';
  if (z_reader != z_implant) {
    out << "ecdh shared secrets differ\n";
    return kCheckFailed;
  }
  const auto key = cipher::derive_session_key(z_reader);
  out << "ecdh P-256 session key " << to_hex(key.bytes()) << '\n';

  const map::DeviceId id{0x1d, 0x00, 0x00, 0x01};
  const map::Command command{'P', 'R', 'O', 'G'};
  const map::Response response{'T', 'H', 'E', 'R', 'A', 'P', 'Y', '1'};
  map::ReaderSession reader(suite, key, id);
  map::ImplantSession implant(suite, key, id, response);

  std::size_t total = 0;
  auto show = [&](const char* label, const char* dir, const Bytes& wire) {
    print_message(out, label, dir, wire);
    total += wire.size();
  };

  try {
    const Bytes m1 = reader.start(command);
    show("M1", "reader->implant", m1);
    const Bytes m2 = implant.on_request(m1, rng);
    show("M2", "implant->reader", m2);
    Bytes m3 = reader.on_challenge(m2, rng);
    if (opts.tamper) {
      m3.back() ^= 0x01;
      out << "tamper flipped bit 0 of the last byte of M3\n";
    }
    show("M3", "reader->implant", m3);
    const Bytes m4 = implant.on_token2(m3);
    show("M4", "implant->reader", m4);
    reader.on_token3(m4);
  } catch (const std::exception& e) {
    out << "rejected: " << e.what() << '\n';
  }

  out << "transcript " << total << " bytes (" << total * 8 << " bits)\n";
  out << "reader " << map::to_string(reader.state()) << '\n';
  out << "implant " << map::to_string(implant.state()) << '\n';
  const bool ok =
      reader.state() == map::ReaderSession::State::Accepted && implant.state() == map::ImplantSession::State::Accepted;
  return ok ? kOk : kCheckFailed;
}

// --- figures -----------------------------------------------------------------

int cmd_fig1(const CliOptions& opts, std::ostream& out) {
  const auto sc = load_scenario(opts);
  const auto& m = sc.model;
  const double ecdh = energy::key_exchange_energy(m.crypto);
  out << "item,cipher,target,blocks,bits,crypto_J,radio_J,total_J,ecdh_J,secured_total_J\n";
  for (const auto& s : sc.suites) {
    const auto c = energy::map_session_energy(m.crypto, m.mcu, m.radio, s);
    out << "MAP," << cipher::to_string(s.cipher()) << ',' << cipher::to_string(s.target()) << ',' << c.blocks << ','
        << c.bits << ',' << format_number(c.crypto_j) << ',' << format_number(c.radio_j) << ','
        << format_number(c.total_j) << ',' << format_number(ecdh) << ','
        << format_number(energy::secured_session_energy(m.crypto, m.mcu, m.radio, s)) << '\n';
  }
  out << "ECDH,-,CryptoPeripheral,0,0," << format_number(ecdh) << ",0," << format_number(ecdh) << ','
      << format_number(ecdh) << ',' << format_number(ecdh) << '\n';
  return kOk;
}

int cmd_fig2(const CliOptions& opts, std::ostream& out) {
  const auto sc = load_scenario(opts);
  const auto rows = battery::lifetime_sweep(sc.batteries, sc.suites, sc.usage, sc.model);
  out << battery::lifetime_csv(rows, sc.usage);
  return kOk;
}

int cmd_fig3(const CliOptions& opts, std::ostream& out) {
  if (opts.ereq_j && !(*opts.ereq_j > 0.0)) throw ConfigError("--ereq must be positive");
  const auto sc = load_scenario(opts);
  std::vector<double> energies = opts.ereq_j ? std::vector<double>{sc.ereq_j} : sc.ereq_sweep_j;
  if (energies.empty()) energies.push_back(sc.ereq_j);
  std::sort(energies.begin(), energies.end());

  std::vector<zpd::SizingRow> rows;
  for (double e : energies) {
    rows.push_back(zpd::size_capacitor(e, sc.capacitor.v_min, sc.capacitor.v_max, sc.harvester, sc.charge_mode));
  }
  out << zpd::sizing_csv(rows);
  return kOk;
}

// --- bdos --------------------------------------------------------------------

int cmd_bdos(const CliOptions& opts, std::ostream& out) {
  const auto sc = load_scenario(opts);
  const auto& a = sc.attack;

  bdos::AttackScenario s;
  s.rate_hz = a.rate_hz;
  s.duration_s = a.duration_s;
  s.defense = a.defense;
  s.arrivals = a.arrivals;
  s.battery_j = sc.batteries[a.battery_index].capacity_j;
  s.sleep_power_w = sc.model.mcu.sleep_power_w;
  s.per_request_j = bdos::per_request_energy(sc.model, *a.suite);
  s.capacitor = sc.capacitor;
  s.harvester = sc.harvester;
  s.charge_mode = sc.charge_mode;
  s.seed = opts.seed;
  s.tick_s = a.tick_s;
  s.sample_interval_s = opts.summary_only ? 0.0 : a.sample_interval_s;
  s.record_events = !opts.summary_only;
  try {
    s.validate();
  } catch (const ArgumentError& e) {
    throw ConfigError(sc.file.source() + ": " + e.what());
  }

  out << bdos::trace_csv(bdos::simulate(s));
  return kOk;
}

// --- dispatch ----------------------------------------------------------------

int run(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    std::ofstream file;
    std::ostream* sink = &out;
    if (opts.out_path) {
      file.open(*opts.out_path, std::ios::binary | std::ios::trunc);
      if (!file) throw ConfigError("cannot open output file " + opts.out_path->string());
      sink = &file;
    }

    int code = kConfigError;
    if (opts.command == "kat") code = cmd_kat(opts, *sink);
    else if (opts.command == "demo") code = cmd_demo(opts, *sink);
    else if (opts.command == "fig1") code = cmd_fig1(opts, *sink);
    else if (opts.command == "fig2") code = cmd_fig2(opts, *sink);
    else if (opts.command == "fig3") code = cmd_fig3(opts, *sink);
    else if (opts.command == "bdos") code = cmd_bdos(opts, *sink);
    else err << "error: unknown command '" << opts.command << "'\n";

    sink->flush();
    if (!*sink) throw ConfigError("failed writing output");
    return code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ArgumentError& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy and security model for implantable medical devices", "imd-guard"};
  CliOptions opts;

  std::string config, out_path, fixtures;
  app.add_option("--config", config, "Preset file (default: $IMD_GUARD_CONFIG, then the bundled preset)");
  app.add_option("--seed", opts.seed, "RNG seed")->capture_default_str();
  app.add_option("--cipher", opts.cipher, "SPECK128_128 | MISTY1 | AES128");
  app.add_option("--target", opts.target, "CPU | CryptoPeripheral");
  app.add_option("--rate", opts.rate_hz, "Attack request rate (req/s)");
  app.add_option("--duration", opts.duration_s, "Attack duration (s)");
  app.add_option("--defense", opts.defense, "none | zpd");
  app.add_option("--arrivals", opts.arrivals, "periodic | poisson");
  app.add_option("--ereq", opts.ereq_j, "Single required energy (J) for fig3");
  app.add_option("--fixtures", fixtures, "Known-answer fixture directory for kat");
  app.add_option("--out", out_path, "Write output to this file instead of stdout");
  app.add_flag("--tamper", opts.tamper, "demo: flip one bit of M3 in transit");
  app.add_flag("--summary-only", opts.summary_only, "bdos: omit per-event rows");

  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"kat", "Run the known-answer fixtures"},
           {"demo", "Run one ECDH + MAP session and dump the transcript"},
           {"fig1", "Per-suite session cost CSV"},
           {"fig2", "Battery lifetime sweep CSV"},
           {"fig3", "ZPD capacitor sizing CSV"},
           {"bdos", "Battery-DoS trace CSV"}}) {
    app.add_subcommand(name, help)->fallthrough();
  }
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kConfigError;
  }

  opts.command = app.get_subcommands().front()->get_name();
  if (!config.empty()) opts.config_path = config;
  if (!out_path.empty()) opts.out_path = out_path;
  if (!fixtures.empty()) opts.fixtures_dir = fixtures;
  return run(opts, out, err);
}

}  // namespace imd::cli
