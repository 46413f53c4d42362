#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace privlog {

// Unix epoch seconds, UTC. Event timestamps are kept at second resolution;
// finer input resolution is floored on parse.
using Seconds = std::int64_t;

inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kSecondsPerMonth = 30.0 * 86400.0;

// Accepts ISO-8601 ("2020-08-08T10:20:00", optional ".fff", optional
// "Z"/"+hh:mm"/"-hh:mm" offset) and the space-separated variant
// "2020-08-08 10:20:00". Seconds may be omitted. Throws ParseError.
Seconds parse_timestamp(std::string_view text);

// "YYYY-MM-DDTHH:MM:SS" (UTC, no offset suffix).
std::string format_timestamp(Seconds t);

// XES flavour: "YYYY-MM-DDTHH:MM:SS.000+00:00".
std::string format_timestamp_xes(Seconds t);

// Proleptic Gregorian day arithmetic (Hinnant's algorithm).
std::int64_t days_from_civil(int year, unsigned month, unsigned day);
void civil_from_days(std::int64_t days, int& year, unsigned& month, unsigned& day);

}  // namespace privlog
