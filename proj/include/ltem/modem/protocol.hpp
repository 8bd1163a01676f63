#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ltem/core/error.hpp"
#include "ltem/core/types.hpp"

namespace ltem::modem {

enum class ProtocolErrc {
    malformed_response,
    unsupported_rat,
    checksum_mismatch,
    no_fix,
    malformed_sentence,
};

using ProtocolError = CodedError<ProtocolErrc>;

enum class AtStatus { ok, error, timeout };

/// Lines of one AT exchange, terminator excluded.
struct AtResponse {
    std::vector<std::string> lines;
    AtStatus status = AtStatus::timeout;
};

/// rsrp value the modem uses for "out of range".
inline constexpr int kCensoredSentinel = -999;

/// Cell and carrier constants written into a serving-cell line.
struct CellInfo {
    std::string state = "NOCONN";
    std::string rat = "eMTC";
    std::string duplex = "FDD";
    std::uint32_t mcc = 262;
    std::uint32_t mnc = 99;
    std::uint32_t cid = 0x1A2B;
    std::uint32_t pcid = 0x5F;
    std::uint32_t earfcn = 3;
    std::uint32_t band = 72;
    std::uint32_t ul_bandwidth = 2;
    std::uint32_t dl_bandwidth = 4;
    std::uint32_t tac = 0x2E1;
};

/// Serving-cell line grammar (17 comma-separated payload fields):
///
///   +QENG: "servingcell",<state>,"<rat>","<duplex>",<mcc>,<mnc>,<cid-hex>,<pcid-hex>,
///          <earfcn>,<band>,<ul-bw>,<dl-bw>,<tac-hex>,<rsrp>,<rsrq>,<rssi>,<sinr>
///
/// followed by an OK line. An rsrp of -999 or an empty rsrp field is censored.
/// Only LTE and eMTC serving cells are accepted.
SignalSample parse_serving_cell(const AtResponse& response, UtcTime utc);

/// Single serving-cell line, without the OK terminator. Numeric indicators are
/// rounded to whole dB as a modem would report them.
std::string render_serving_cell_line(const SignalSample& sample, const CellInfo& cell);

AtResponse render_serving_cell(const SignalSample& sample, const CellInfo& cell);

enum class FixQuality { none, standard, differential };

struct GnssFix {
    std::optional<GeoPosition> position;  // absent iff quality == none
    FixQuality quality = FixQuality::none;
    std::chrono::milliseconds time_of_day{0};  // UTC
};

/// XOR of all bytes between '$' and '*'.
std::uint8_t nmea_checksum(std::string_view body);

/// Parses a checksummed NMEA-0183 GGA sentence from any talker ($GPGGA, $GNGGA, ...).
/// Quality 0 and non-measured qualities (estimated, manual, simulation) raise no_fix.
GnssFix parse_gga(std::string_view sentence);

/// Emits "$GPGGA,...*hh" for a position fix (or a quality-0 sentence when absent).
std::string render_gga(const std::optional<GeoPosition>& position, std::chrono::milliseconds time_of_day,
                       FixQuality quality = FixQuality::standard, int satellites = 8, double hdop = 0.9);

}  // namespace ltem::modem
