#pragma once

#include "pplot/timeline.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace pplot {

enum class TimeFormat { EpochMillis, Iso8601, DateOnly };

[[nodiscard]] std::string_view to_string(TimeFormat format);
[[nodiscard]] std::optional<TimeFormat> time_format_from_string(std::string_view text);

/// Parses a timestamp in the given format. DateOnly ("YYYY-MM-DD") maps to
/// midnight UTC. ISO 8601 accepts an optional time of day, fractional
/// seconds, and a Z or +-HH:MM offset.
[[nodiscard]] std::optional<TimeMs> parse_time(std::string_view text, TimeFormat format);

/// "YYYY-MM-DD" at midnight, otherwise "YYYY-MM-DD HH:MM:SS" (UTC).
[[nodiscard]] std::string format_time(TimeMs t);

}  // namespace pplot
