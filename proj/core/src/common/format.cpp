#include "imd/common/format.hpp"

#include <fmt/format.h>

namespace imd {

std::string format_number(double value) { return fmt::format("{}", value); }

std::string format_number(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string("inf");
}

}  // namespace imd
