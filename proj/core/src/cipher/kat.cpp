#include "imd/cipher/kat.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "imd/cipher/p256.hpp"
#include "imd/common/errors.hpp"

namespace imd::cipher {

namespace {

using Fields = std::map<std::string, Bytes, std::less<>>;

Fields parse_fields(std::string_view line) {
  Fields out;
  std::istringstream in{std::string(line)};
  std::string token;
  while (in >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) throw ArgumentError("expected NAME=hex, got '" + token + "'");
    out[token.substr(0, eq)] = from_hex(std::string_view(token).substr(eq + 1));
  }
  return out;
}

const Bytes& field(const Fields& f, std::string_view name) {
  auto it = f.find(name);
  if (it == f.end()) throw ArgumentError("missing field " + std::string(name));
  return it->second;
}

std::optional<CipherId> cipher_for_file(const std::string& name) {
  for (auto id : kAllCiphers) {
    if (name == kat_file_name(id)) return id;
  }
  return std::nullopt;
}

std::string check_cipher_vector(CipherId cipher, const Fields& f) {
  auto key = SymmetricKey::from_bytes(field(f, "KEY"));
  const auto& pt = field(f, "PT");
  const auto& ct = field(f, "CT");
  auto got_ct = encrypt_block(cipher, key, pt);
  if (got_ct != ct) return "encrypt mismatch: expected " + to_hex(ct) + ", got " + to_hex(got_ct);
  auto got_pt = decrypt_block(cipher, key, ct);
  if (got_pt != pt) return "decrypt mismatch: expected " + to_hex(pt) + ", got " + to_hex(got_pt);
  return {};
}

std::string check_ecdh_vector(const Fields& f) {
  auto own = KeyAgreementParams::from_private_scalar(to_array<32>(field(f, "D")));
  AffinePoint expected_pub{to_array<32>(field(f, "QX")), to_array<32>(field(f, "QY"))};
  if (!(own.public_point() == expected_pub)) {
    return "public point mismatch: got x=" + to_hex(own.public_point().x);
  }
  AffinePoint peer{to_array<32>(field(f, "PEERX")), to_array<32>(field(f, "PEERY"))};
  auto z = shared_secret(own, peer);
  const auto& expected_z = field(f, "Z");
  if (!std::equal(z.begin(), z.end(), expected_z.begin(), expected_z.end())) {
    return "shared secret mismatch: expected " + to_hex(expected_z) + ", got " + to_hex(z);
  }
  return {};
}

}  // namespace

bool KatReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const KatResult& r) { return r.passed; });
}

std::size_t KatReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [](const KatResult& r) { return !r.passed; }));
}

std::string kat_file_name(CipherId cipher) {
  std::string name(to_string(cipher));
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  return name + ".kat";
}

KatReport run_kat_text(std::string_view text, const std::string& name) {
  const auto cipher = cipher_for_file(name);
  const bool ecdh = name == kEcdhKatFile;
  if (!cipher && !ecdh) throw ConfigError("unknown fixture '" + name + "'");

  KatReport report;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    KatResult r{name, line_no, false, {}};
    try {
      auto fields = parse_fields(line);
      r.detail = ecdh ? check_ecdh_vector(fields) : check_cipher_vector(*cipher, fields);
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    report.results.push_back(std::move(r));
  }
  if (report.results.empty()) {
    report.results.push_back(KatResult{name, 0, false, "fixture contains no vectors"});
  }
  return report;
}

KatReport run_kat_directory(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ConfigError("fixture directory '" + dir.string() + "' does not exist");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".kat") files.push_back(entry.path());
  }
  if (files.empty()) throw ConfigError("no .kat fixtures in '" + dir.string() + "'");
  std::sort(files.begin(), files.end());

  KatReport report;
  for (const auto& path : files) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    auto part = run_kat_text(buf.str(), path.filename().string());
    report.results.insert(report.results.end(), part.results.begin(), part.results.end());
  }
  return report;
}

}  // namespace imd::cipher
