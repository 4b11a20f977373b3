#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace wcf {

// All timestamps are UTC, second resolution. Hourly series use hour-aligned
// instants (minutes and seconds zero).
using TimePoint = std::chrono::sys_seconds;

inline constexpr std::chrono::seconds kSlotLength{3600};

// Parses an ISO-8601 UTC timestamp: "2022-06-01T14:00:00Z". The seconds
// field and the trailing 'Z' may be omitted; a space may stand in for 'T'.
// Offsets other than Z/+00:00 are rejected. Throws ParseError.
TimePoint parse_iso8601_utc(std::string_view text);

// Canonical form: "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601_utc(TimePoint t);

bool hour_aligned(TimePoint t);

// UTC hour of day in [0, 23]. t need not be hour-aligned.
int hour_of_day_utc(TimePoint t);

// First instant of the month containing t (00:00:00 UTC on the 1st).
TimePoint month_start(TimePoint t);

// First instant of the month after the one containing t.
TimePoint next_month_start(TimePoint t);

}  // namespace wcf
