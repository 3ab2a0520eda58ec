#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace imd {

/// Structured-text config: `[section]` headers, `key = value` lines, `#`
/// comments. A comment of the form `# provenance: <tag> ...` attaches to the
/// next key in the same section.
///
/// Lookups of absent keys throw ConfigError naming the section and key.
class ConfigFile {
 public:
  struct Entry {
    std::string value;
    std::optional<std::string> provenance;  // first word after "provenance:"
    int line = 0;
  };

  static ConfigFile parse(std::string_view text, std::string source_name = "<memory>");
  static ConfigFile load(const std::filesystem::path& path);

  bool has(std::string_view section, std::string_view key) const;
  const Entry& entry(std::string_view section, std::string_view key) const;

  std::string get_string(std::string_view section, std::string_view key) const;
  double get_double(std::string_view section, std::string_view key) const;
  std::vector<double> get_double_list(std::string_view section, std::string_view key) const;
  std::vector<std::string> get_string_list(std::string_view section, std::string_view key) const;
  bool get_bool(std::string_view section, std::string_view key) const;

  // Command-line overrides replace the value and mark provenance "override".
  void set(std::string_view section, std::string_view key, std::string value);

  std::vector<std::pair<std::string, std::string>> keys() const;
  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::map<std::string, std::map<std::string, Entry, std::less<>>, std::less<>> sections_;
};

// Locale-independent strict double parse; nullopt on trailing garbage.
std::optional<double> parse_double(std::string_view text);

}  // namespace imd
