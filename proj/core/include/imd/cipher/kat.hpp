#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "imd/cipher/block_cipher.hpp"
#include "imd/common/bytes.hpp"

namespace imd::cipher {

// Known-answer fixtures are plain hex text, one vector per line:
//
//   <cipher>.kat    KEY=<hex> PT=<hex> CT=<hex>
//   p256_ecdh.kat   D=<hex> QX=<hex> QY=<hex> PEERX=<hex> PEERY=<hex> Z=<hex>
//
// `#` starts a comment line. <cipher> is the lower-cased CipherId name.

struct KatResult {
  std::string file;
  int line = 0;
  bool passed = false;
  std::string detail;
};

struct KatReport {
  std::vector<KatResult> results;

  bool all_passed() const;
  std::size_t failures() const;
};

std::string kat_file_name(CipherId cipher);
inline constexpr std::string_view kEcdhKatFile = "p256_ecdh.kat";

// Run every vector in one fixture. `name` selects the primitive. Malformed
// lines are reported as failed results rather than thrown.
KatReport run_kat_text(std::string_view text, const std::string& name);

// Runs every `*.kat` file in `dir`, sorted by name. Throws ConfigError when
// the directory is missing, holds no fixtures, or names an unknown primitive.
KatReport run_kat_directory(const std::filesystem::path& dir);

}  // namespace imd::cipher
