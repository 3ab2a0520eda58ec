#pragma once

#include <optional>
#include <string>

namespace imd {

// Shortest round-trip decimal form, '.' separator, independent of locale.
// Used for every CSV value so outputs are byte-stable.
std::string format_number(double value);

// nullopt renders as "inf".
std::string format_number(const std::optional<double>& value);

}  // namespace imd
