#include "ltem/core/text.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace ltem::text {

std::string format_number(double value) {
    if (value == 0.0) return "0";  // folds -0 into 0
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

std::optional<double> parse_double(std::string_view text) {
    if (text.empty()) return std::nullopt;
    if (text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::optional<long long> parse_int(std::string_view text) {
    if (text.empty()) return std::nullopt;
    if (text.front() == '+') text.remove_prefix(1);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::optional<std::uint32_t> parse_hex_u32(std::string_view text) {
    if (text.empty() || text.size() > 8) return std::nullopt;
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, 16);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::string_view trim(std::string_view text) {
    constexpr std::string_view ws = " \t\r\n";
    const auto first = text.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(ws);
    return text.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

namespace {

struct Parts {
    std::chrono::year_month_day ymd;
    std::chrono::hh_mm_ss<std::chrono::milliseconds> tod;
};

Parts split_time(UtcTime t) {
    const auto day = std::chrono::floor<std::chrono::days>(t);
    return {std::chrono::year_month_day{day}, std::chrono::hh_mm_ss{t - day}};
}

}  // namespace

std::string format_date(UtcTime t) {
    const auto p = split_time(t);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(p.ymd.year()),
                  static_cast<unsigned>(p.ymd.month()), static_cast<unsigned>(p.ymd.day()));
    return buf;
}

std::string format_time_of_day(UtcTime t) {
    const auto p = split_time(t);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%02d:%02d:%02d.%03dZ", static_cast<int>(p.tod.hours().count()),
                  static_cast<int>(p.tod.minutes().count()), static_cast<int>(p.tod.seconds().count()),
                  static_cast<int>(p.tod.subseconds().count()));
    return buf;
}

std::string format_iso8601(UtcTime t) { return format_date(t) + "T" + format_time_of_day(t); }

std::optional<UtcTime> parse_date_time(std::string_view date, std::string_view tod) {
    // YYYY-MM-DD
    if (date.size() != 10 || date[4] != '-' || date[7] != '-') return std::nullopt;
    const auto y = parse_int(date.substr(0, 4));
    const auto mo = parse_int(date.substr(5, 2));
    const auto d = parse_int(date.substr(8, 2));
    if (!y || !mo || !d) return std::nullopt;
    const std::chrono::year_month_day ymd{std::chrono::year{static_cast<int>(*y)},
                                          std::chrono::month{static_cast<unsigned>(*mo)},
                                          std::chrono::day{static_cast<unsigned>(*d)}};
    if (!ymd.ok()) return std::nullopt;

    // HH:MM:SS.mmmZ
    if (tod.size() != 13 || tod[2] != ':' || tod[5] != ':' || tod[8] != '.' || tod[12] != 'Z') return std::nullopt;
    const auto h = parse_int(tod.substr(0, 2));
    const auto mi = parse_int(tod.substr(3, 2));
    const auto s = parse_int(tod.substr(6, 2));
    const auto ms = parse_int(tod.substr(9, 3));
    if (!h || !mi || !s || !ms || *h < 0 || *h > 23 || *mi < 0 || *mi > 59 || *s < 0 || *s > 59 || *ms < 0)
        return std::nullopt;

    return UtcTime{std::chrono::sys_days{ymd}} + std::chrono::hours{*h} + std::chrono::minutes{*mi} +
           std::chrono::seconds{*s} + std::chrono::milliseconds{*ms};
}

}  // namespace ltem::text
