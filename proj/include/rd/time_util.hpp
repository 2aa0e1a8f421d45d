#pragma once

#include <string>

#include "rd/types.hpp"

namespace rd {

// Parses an ISO-8601 UTC timestamp, e.g. "2016-07-22T18:22:00Z".
// Fractional seconds are accepted and truncated. Throws ParseError.
Timestamp parse_iso8601_utc(const std::string& text);

// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601_utc(Timestamp t);

// Start of the clock hour containing t.
inline Timestamp floor_to_hour(Timestamp t) {
  Timestamp h = t / kHour;
  if (t < 0 && t % kHour != 0) --h;
  return h * kHour;
}

}  // namespace rd
