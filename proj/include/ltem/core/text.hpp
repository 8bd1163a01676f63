#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ltem/core/types.hpp"

namespace ltem::text {

/// Shortest representation that parses back to the same double.
std::string format_number(double value);

std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);
std::optional<std::uint32_t> parse_hex_u32(std::string_view text);

std::string_view trim(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char sep);

/// "YYYY-MM-DD" and "HH:MM:SS.mmmZ" halves of a UTC timestamp.
std::string format_date(UtcTime t);
std::string format_time_of_day(UtcTime t);
std::optional<UtcTime> parse_date_time(std::string_view date, std::string_view time_of_day);

/// Full ISO-8601 timestamp, e.g. "2024-05-14T10:00:03.000Z".
std::string format_iso8601(UtcTime t);

}  // namespace ltem::text
