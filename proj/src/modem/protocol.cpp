#include "ltem/modem/protocol.hpp"

#include <cmath>
#include <cstdio>

#include "ltem/core/text.hpp"

namespace ltem::modem {

namespace {

constexpr std::string_view kQengPrefix = "+QENG:";
constexpr std::size_t kServingCellFields = 17;

[[noreturn]] void malformed(const std::string& why) {
    throw ProtocolError(ProtocolErrc::malformed_response, "malformed serving-cell response: " + why);
}

std::string_view unquote(std::string_view field) {
    field = text::trim(field);
    if (field.size() >= 2 && field.front() == '"' && field.back() == '"') return field.substr(1, field.size() - 2);
    return field;
}

std::uint32_t decimal_field(std::string_view field, const char* name) {
    const auto value = text::parse_int(field);
    if (!value || *value < 0 || *value > 0xFFFFFFFFLL) malformed(std::string(name) + " is not an unsigned integer");
    return static_cast<std::uint32_t>(*value);
}

std::uint32_t hex_field(std::string_view field, const char* name) {
    const auto value = text::parse_hex_u32(field);
    if (!value) malformed(std::string(name) + " is not hexadecimal");
    return *value;
}

double signed_field(std::string_view field, const char* name) {
    const auto value = text::parse_int(field);
    if (!value || *value < -100000 || *value > 100000) malformed(std::string(name) + " is not a signed integer");
    return static_cast<double>(*value);
}

long rounded(double value) { return std::lround(value); }

}  // namespace

SignalSample parse_serving_cell(const AtResponse& response, UtcTime utc) {
    if (response.status != AtStatus::ok) malformed("response did not terminate with OK");

    std::string_view payload;
    bool found = false;
    for (const auto& line : response.lines) {
        const auto trimmed = text::trim(line);
        if (trimmed.starts_with(kQengPrefix)) {
            payload = text::trim(trimmed.substr(kQengPrefix.size()));
            found = true;
            break;
        }
    }
    if (!found) malformed("no +QENG line");

    const auto fields = text::split(payload, ',');
    if (fields.size() != kServingCellFields)
        malformed("expected " + std::to_string(kServingCellFields) + " fields, got " + std::to_string(fields.size()));

    if (unquote(fields[0]) != "servingcell") malformed("first field is not \"servingcell\"");
    const auto rat = unquote(fields[2]);
    if (rat != "LTE" && rat != "eMTC")
        throw ProtocolError(ProtocolErrc::unsupported_rat, "serving cell RAT '" + std::string(rat) + "' is not LTE/eMTC");

    decimal_field(unquote(fields[4]), "mcc");
    decimal_field(unquote(fields[5]), "mnc");
    decimal_field(unquote(fields[8]), "earfcn");
    decimal_field(unquote(fields[9]), "band");
    decimal_field(unquote(fields[10]), "ul-bw");
    decimal_field(unquote(fields[11]), "dl-bw");
    hex_field(unquote(fields[7]), "pcid");

    SignalSample sample;
    sample.cid = hex_field(unquote(fields[6]), "cid");
    sample.tac = hex_field(unquote(fields[12]), "tac");

    const auto rsrp_text = unquote(fields[13]);
    if (!rsrp_text.empty()) {
        const double rsrp = signed_field(rsrp_text, "rsrp");
        if (rsrp != kCensoredSentinel) sample.rsrp = rsrp;
    }
    sample.rsrq = signed_field(unquote(fields[14]), "rsrq");
    sample.rssi = signed_field(unquote(fields[15]), "rssi");
    sample.sinr = signed_field(unquote(fields[16]), "sinr");
    sample.utc = utc;
    return sample;
}

std::string render_serving_cell_line(const SignalSample& s, const CellInfo& cell) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "+QENG: \"servingcell\",\"%s\",\"%s\",\"%s\",%u,%u,%X,%X,%u,%u,%u,%u,%X,%ld,%ld,%ld,%ld",
                  cell.state.c_str(), cell.rat.c_str(), cell.duplex.c_str(), cell.mcc, cell.mnc, cell.cid, cell.pcid,
                  cell.earfcn, cell.band, cell.ul_bandwidth, cell.dl_bandwidth, cell.tac,
                  s.rsrp ? rounded(*s.rsrp) : static_cast<long>(kCensoredSentinel), rounded(s.rsrq), rounded(s.rssi),
                  rounded(s.sinr));
    return buf;
}

AtResponse render_serving_cell(const SignalSample& sample, const CellInfo& cell) {
    return AtResponse{{render_serving_cell_line(sample, cell)}, AtStatus::ok};
}

std::uint8_t nmea_checksum(std::string_view body) {
    std::uint8_t sum = 0;
    for (char c : body) sum ^= static_cast<std::uint8_t>(c);
    return sum;
}

namespace {

[[noreturn]] void bad_sentence(const std::string& why) {
    throw ProtocolError(ProtocolErrc::malformed_sentence, "malformed GGA sentence: " + why);
}

// ddmm.mmmm / dddmm.mmmm to signed decimal degrees
double nmea_angle(std::string_view value, std::string_view hemisphere, char positive, char negative, double limit) {
    const auto raw = text::parse_double(value);
    if (!raw || *raw < 0.0) bad_sentence("coordinate '" + std::string(value) + "' is not numeric");
    const double degrees = std::floor(*raw / 100.0);
    const double minutes = *raw - degrees * 100.0;
    if (minutes >= 60.0) bad_sentence("minutes out of range");
    double angle = degrees + minutes / 60.0;
    if (angle > limit) bad_sentence("coordinate out of range");
    if (hemisphere.size() != 1) bad_sentence("missing hemisphere");
    if (hemisphere[0] == negative) {
        angle = -angle;
    } else if (hemisphere[0] != positive) {
        bad_sentence("bad hemisphere '" + std::string(hemisphere) + "'");
    }
    return angle;
}

std::chrono::milliseconds nmea_time(std::string_view value) {
    if (value.empty()) return std::chrono::milliseconds{0};
    const auto raw = text::parse_double(value);
    if (!raw || *raw < 0.0 || value.size() < 6) bad_sentence("bad UTC field");
    const auto hh = static_cast<long>(*raw / 10000.0);
    const auto mm = static_cast<long>(*raw / 100.0) % 100;
    const double ss = *raw - static_cast<double>(hh * 10000 + mm * 100);
    if (hh > 23 || mm > 59 || ss >= 61.0) bad_sentence("bad UTC field");
    return std::chrono::milliseconds{hh * 3'600'000L + mm * 60'000L + std::lround(ss * 1000.0)};
}

}  // namespace

GnssFix parse_gga(std::string_view sentence) {
    sentence = text::trim(sentence);
    if (sentence.empty() || sentence.front() != '$') bad_sentence("missing '$'");
    const auto star = sentence.find('*');
    if (star == std::string_view::npos) bad_sentence("missing checksum");
    const auto checksum_text = sentence.substr(star + 1);
    const auto expected = text::parse_hex_u32(checksum_text);
    if (checksum_text.size() != 2 || !expected) bad_sentence("checksum must be two hex digits");

    const auto body = sentence.substr(1, star - 1);
    if (nmea_checksum(body) != *expected)
        throw ProtocolError(ProtocolErrc::checksum_mismatch, "GGA checksum mismatch");

    const auto fields = text::split(body, ',');
    if (fields[0].size() != 5 || !fields[0].ends_with("GGA")) bad_sentence("not a GGA sentence");
    if (fields.size() < 10) bad_sentence("too few fields");

    const auto quality_value = text::parse_int(fields[6]);
    if (!quality_value) bad_sentence("quality field is not numeric");

    GnssFix fix;
    switch (*quality_value) {
        case 1:
        case 3: fix.quality = FixQuality::standard; break;
        case 2:
        case 4:
        case 5: fix.quality = FixQuality::differential; break;
        default:
            // 0 invalid; 6 dead reckoning, 7 manual and 8 simulation are not measurements
            throw ProtocolError(ProtocolErrc::no_fix, "GGA reports no fix (quality " +
                                                          std::to_string(*quality_value) + ")");
    }

    fix.time_of_day = nmea_time(fields[1]);
    GeoPosition pos;
    pos.latitude = nmea_angle(fields[2], fields[3], 'N', 'S', 90.0);
    pos.longitude = nmea_angle(fields[4], fields[5], 'E', 'W', 180.0);
    const auto altitude = text::parse_double(fields[9]);
    if (!altitude) bad_sentence("altitude is not numeric");
    pos.altitude = *altitude;
    fix.position = pos;
    return fix;
}

namespace {

std::string nmea_coordinate(double angle, int degree_digits) {
    const double a = std::fabs(angle);
    long degrees = static_cast<long>(std::floor(a));
    double minutes = std::round((a - static_cast<double>(degrees)) * 60.0 * 1e5) / 1e5;
    if (minutes >= 60.0) {
        degrees += 1;
        minutes -= 60.0;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*ld%08.5f", degree_digits, degrees, minutes);
    return buf;
}

}  // namespace

std::string render_gga(const std::optional<GeoPosition>& position, std::chrono::milliseconds time_of_day,
                       FixQuality quality, int satellites, double hdop) {
    const long total_cs = static_cast<long>(time_of_day.count() / 10) % (24L * 360000L);
    char time_buf[16];
    std::snprintf(time_buf, sizeof time_buf, "%02ld%02ld%02ld.%02ld", total_cs / 360000, (total_cs / 6000) % 60,
                  (total_cs / 100) % 60, total_cs % 100);

    std::string body = "GPGGA,";
    body += time_buf;
    if (!position || quality == FixQuality::none) {
        body += ",,,,,0,00,99.9,,M,,M,,";
    } else {
        char tail[96];
        std::snprintf(tail, sizeof tail, ",%d,%02d,%.1f,%.1f,M,47.0,M,,", quality == FixQuality::differential ? 2 : 1,
                      satellites, hdop, position->altitude);
        body += "," + nmea_coordinate(position->latitude, 2) + (position->latitude < 0 ? ",S," : ",N,") +
                nmea_coordinate(position->longitude, 3) + (position->longitude < 0 ? ",W" : ",E") + tail;
    }
    char checksum[4];
    std::snprintf(checksum, sizeof checksum, "%02X", nmea_checksum(body));
    return "$" + body + "*" + checksum;
}

}  // namespace ltem::modem
