#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace streameval {

// Timestamps are UTC milliseconds since the Unix epoch. Files carry RFC-3339 text;
// everything in memory is integer milliseconds.
using TimeMs = std::int64_t;
using DurationMs = std::int64_t;

inline constexpr DurationMs kMillisecond = 1;
inline constexpr DurationMs kSecond = 1000;
inline constexpr DurationMs kMinute = 60 * kSecond;
inline constexpr DurationMs kHour = 60 * kMinute;
inline constexpr DurationMs kDay = 24 * kHour;

// Parses "YYYY-MM-DDThh:mm:ss[.fff](Z|±hh:mm)" into UTC milliseconds.
// Fractions longer than 3 digits are truncated to millisecond precision.
// Throws ParseError on anything else.
TimeMs parse_rfc3339(std::string_view text);

// Canonical form: "YYYY-MM-DDThh:mm:ss.fffZ".
std::string format_rfc3339(TimeMs t);

// Parses "<positive integer><unit>" with unit in {ms, s, m, h, d, w}, e.g. "7d", "90s".
// Throws ParseError on malformed input; zero and negative magnitudes are rejected.
DurationMs parse_duration(std::string_view text);

// Largest unit that divides the duration evenly, e.g. 604800000 -> "7d".
std::string format_duration(DurationMs d);

// Days in fractional units <-> milliseconds, used by the delay simulator.
inline DurationMs days_to_ms(double days) {
    return static_cast<DurationMs>(days * static_cast<double>(kDay) + 0.5);
}

}  // namespace streameval
