#include "imd/common/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "imd/common/errors.hpp"

namespace imd {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  while (!value.empty()) {
    auto comma = value.find(',');
    auto item = trim(value.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

ConfigFile ConfigFile::parse(std::string_view text, std::string source_name) {
  ConfigFile cfg;
  cfg.source_ = std::move(source_name);
  std::string section;
  std::optional<std::string> pending_provenance;
  int line_no = 0;

  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty()) continue;
    auto where = [&] { return cfg.source_ + ":" + std::to_string(line_no) + ": "; };

    if (line.front() == '#') {
      auto body = trim(line.substr(1));
      constexpr std::string_view kTag = "provenance:";
      if (body.starts_with(kTag)) {
        auto rest = trim(body.substr(kTag.size()));
        auto word_end = rest.find_first_of(" \t(");
        auto tag = std::string(rest.substr(0, word_end));
        if (tag.empty()) throw ConfigError(where() + "empty provenance tag");
        pending_provenance = tag;
      }
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where() + "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) throw ConfigError(where() + "empty section name");
      pending_provenance.reset();
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where() + "expected 'key = value'");
    if (section.empty()) throw ConfigError(where() + "key outside of any [section]");
    auto key = std::string(trim(line.substr(0, eq)));
    auto value = trim(line.substr(eq + 1));
    // Trailing comments on value lines.
    if (auto hash = value.find(" #"); hash != std::string_view::npos) value = trim(value.substr(0, hash));
    if (key.empty()) throw ConfigError(where() + "empty key");
    auto& sec = cfg.sections_[section];
    if (sec.contains(key)) throw ConfigError(where() + "duplicate key '" + key + "'");
    sec.emplace(key, Entry{std::string(value), pending_provenance, line_no});
    pending_provenance.reset();
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

bool ConfigFile::has(std::string_view section, std::string_view key) const {
  auto s = sections_.find(section);
  return s != sections_.end() && s->second.find(key) != s->second.end();
}

const ConfigFile::Entry& ConfigFile::entry(std::string_view section, std::string_view key) const {
  auto s = sections_.find(section);
  if (s != sections_.end()) {
    auto k = s->second.find(key);
    if (k != s->second.end()) return k->second;
  }
  throw ConfigError(source_ + ": missing key [" + std::string(section) + "] " + std::string(key));
}

std::string ConfigFile::get_string(std::string_view section, std::string_view key) const {
  return entry(section, key).value;
}

double ConfigFile::get_double(std::string_view section, std::string_view key) const {
  const auto& e = entry(section, key);
  auto v = parse_double(e.value);
  if (!v) {
    throw ConfigError(source_ + ":" + std::to_string(e.line) + ": [" + std::string(section) + "] " +
                      std::string(key) + " is not a number: '" + e.value + "'");
  }
  return *v;
}

std::vector<double> ConfigFile::get_double_list(std::string_view section, std::string_view key) const {
  const auto& e = entry(section, key);
  std::vector<double> out;
  for (const auto& item : split_list(e.value)) {
    auto v = parse_double(item);
    if (!v) {
      throw ConfigError(source_ + ":" + std::to_string(e.line) + ": bad number '" + item + "' in [" +
                        std::string(section) + "] " + std::string(key));
    }
    out.push_back(*v);
  }
  return out;
}

std::vector<std::string> ConfigFile::get_string_list(std::string_view section, std::string_view key) const {
  return split_list(entry(section, key).value);
}

bool ConfigFile::get_bool(std::string_view section, std::string_view key) const {
  const auto& e = entry(section, key);
  if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
  if (e.value == "false" || e.value == "0" || e.value == "no") return false;
  throw ConfigError(source_ + ":" + std::to_string(e.line) + ": [" + std::string(section) + "] " +
                    std::string(key) + " is not a boolean: '" + e.value + "'");
}

void ConfigFile::set(std::string_view section, std::string_view key, std::string value) {
  auto& sec = sections_[std::string(section)];
  auto it = sec.find(key);
  if (it == sec.end()) {
    sec.emplace(std::string(key), Entry{std::move(value), std::string("override"), 0});
  } else {
    it->second.value = std::move(value);
    it->second.provenance = "override";
  }
}

std::vector<std::pair<std::string, std::string>> ConfigFile::keys() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [s, entries] : sections_) {
    for (const auto& [k, _] : entries) out.emplace_back(s, k);
  }
  return out;
}

}  // namespace imd
