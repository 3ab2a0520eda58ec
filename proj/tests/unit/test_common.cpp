#include <gtest/gtest.h>

#include <clocale>
#include <set>

#include "imd/common/bytes.hpp"
#include "imd/common/config.hpp"
#include "imd/common/errors.hpp"
#include "imd/common/format.hpp"
#include "imd/common/rng.hpp"

namespace imd {
namespace {

TEST(Hex, RoundTrip) {
  const Bytes b{0x00, 0x01, 0xab, 0xff};
  EXPECT_EQ(to_hex(b), "0001abff");
  EXPECT_EQ(from_hex("0001ABff"), b);
  EXPECT_TRUE(from_hex("").empty());
}

TEST(Hex, RejectsOddLengthAndBadDigits) {
  EXPECT_THROW(from_hex("abc"), ArgumentError);
  EXPECT_THROW(from_hex("zz"), ArgumentError);
}

TEST(Bytes, ToArrayChecksLength) {
  const Bytes b(8, 7);
  EXPECT_EQ((to_array<8>(b))[7], 7);
  EXPECT_THROW(to_array<16>(b), LengthError);
}

TEST(Bytes, EndianHelpers) {
  std::uint8_t buf[8];
  store_be64(buf, 0x0102030405060708ULL);
  EXPECT_EQ(buf[0], 1);
  EXPECT_EQ(load_be64(buf), 0x0102030405060708ULL);
  store_le64(buf, 0x0102030405060708ULL);
  EXPECT_EQ(buf[0], 8);
  EXPECT_EQ(load_le64(buf), 0x0102030405060708ULL);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  std::set<std::uint64_t> diff;
  for (int i = 0; i < 16; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    if (x != c.next()) diff.insert(x);
  }
  EXPECT_FALSE(diff.empty());
}

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_number(470e-6), "0.00047");
  EXPECT_EQ(format_number(10080.0), "10080");
  EXPECT_EQ(format_number(0.1 + 0.2), "0.30000000000000004");
  EXPECT_EQ(format_number(std::optional<double>{}), "inf");
}

TEST(Format, IgnoresLocale) {
  const char* old = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = old ? old : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") == nullptr) GTEST_SKIP() << "de_DE locale not installed";
  EXPECT_EQ(format_number(1.5), "1.5");
  EXPECT_EQ(parse_double("1.5"), 1.5);
  std::setlocale(LC_NUMERIC, saved.c_str());
}

constexpr const char* kSample = R"(# header comment
[mcu]
# provenance: published  clock
clock_hz = 19e6
sleep_power_w = 3e-6   # trailing comment

[lists]
# provenance: modelling-choice
values = 1, 2.5 ,3e-3
names = A/B, C
flag = true
)";

TEST(Config, ParsesSectionsValuesAndProvenance) {
  const auto cfg = ConfigFile::parse(kSample, "sample");
  EXPECT_DOUBLE_EQ(cfg.get_double("mcu", "clock_hz"), 19e6);
  EXPECT_DOUBLE_EQ(cfg.get_double("mcu", "sleep_power_w"), 3e-6);
  EXPECT_EQ(cfg.entry("mcu", "clock_hz").provenance, "published");
  EXPECT_FALSE(cfg.entry("mcu", "sleep_power_w").provenance.has_value());
  EXPECT_EQ(cfg.entry("lists", "values").provenance, "modelling-choice");
  EXPECT_EQ(cfg.get_double_list("lists", "values"), (std::vector<double>{1, 2.5, 3e-3}));
  EXPECT_EQ(cfg.get_string_list("lists", "names"), (std::vector<std::string>{"A/B", "C"}));
  EXPECT_TRUE(cfg.get_bool("lists", "flag"));
  EXPECT_EQ(cfg.keys().size(), 5u);
}

TEST(Config, MissingKeyNamesSectionAndKey) {
  const auto cfg = ConfigFile::parse(kSample, "sample");
  try {
    cfg.get_double("radio", "tx_power_w");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("[radio] tx_power_w"), std::string::npos);
  }
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(ConfigFile::parse("key = 1\n"), ConfigError);
  EXPECT_THROW(ConfigFile::parse("[s]\nnot a pair\n"), ConfigError);
  EXPECT_THROW(ConfigFile::parse("[s]\na = 1\na = 2\n"), ConfigError);
  EXPECT_THROW(ConfigFile::parse("[s\na = 1\n"), ConfigError);
  const auto cfg = ConfigFile::parse("[s]\na = 12abc\nb = 1,x\n");
  EXPECT_THROW(cfg.get_double("s", "a"), ConfigError);
  EXPECT_THROW(cfg.get_double_list("s", "b"), ConfigError);
  EXPECT_THROW(cfg.get_bool("s", "a"), ConfigError);
}

TEST(Config, OverrideReplacesValueAndMarksProvenance) {
  auto cfg = ConfigFile::parse(kSample);
  cfg.set("mcu", "clock_hz", "8e6");
  EXPECT_DOUBLE_EQ(cfg.get_double("mcu", "clock_hz"), 8e6);
  EXPECT_EQ(cfg.entry("mcu", "clock_hz").provenance, "override");
  cfg.set("new", "key", "1");
  EXPECT_TRUE(cfg.has("new", "key"));
}

TEST(Config, LoadMissingFileIsConfigError) {
  EXPECT_THROW(ConfigFile::load("/nonexistent/x.cfg"), ConfigError);
}

TEST(Config, ParseDoubleStrict) {
  EXPECT_EQ(parse_double(" 2.5 "), 2.5);
  EXPECT_EQ(parse_double("+1e3"), 1000.0);
  EXPECT_FALSE(parse_double("1.0.0"));
  EXPECT_FALSE(parse_double(""));
  EXPECT_FALSE(parse_double("inf"));
}

}  // namespace
}  // namespace imd
