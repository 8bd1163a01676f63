#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace ltem {

using UtcTime = std::chrono::sys_time<std::chrono::milliseconds>;

/// Lowest RSRP the modem can report; anything weaker is "no reception".
inline constexpr double kSensitivityFloorDbm = -140.0;
inline constexpr double kRsrpMaxDbm = -44.0;
inline constexpr double kRsrqMinDb = -34.0;
inline constexpr double kRsrqMaxDb = 3.0;
inline constexpr double kSinrMinDb = -23.0;
inline constexpr double kSinrMaxDb = 40.0;

/// One serving-cell readout. An empty rsrp means the reading was censored
/// (below the sensitivity floor) and carries no numeric value.
struct SignalSample {
    std::optional<double> rsrp;  // dBm
    double rsrq = 0.0;           // dB
    double rssi = 0.0;           // dBm
    double sinr = 0.0;           // dB
    std::uint32_t tac = 0;
    std::uint32_t cid = 0;
    UtcTime utc{};

    bool censored() const noexcept { return !rsrp.has_value(); }

    friend bool operator==(const SignalSample&, const SignalSample&) = default;
};

/// Measurement identifier "X.Y": X is the position, Y the sample at that position.
struct MeasurementId {
    std::uint32_t position_id = 0;
    std::uint32_t sample_id = 0;

    friend auto operator<=>(const MeasurementId&, const MeasurementId&) = default;
};

std::string render_id(MeasurementId id);

/// Throws std::invalid_argument unless text is "<digits>.<digits>" with Y >= 1.
MeasurementId parse_id(std::string_view text);

struct GeoPosition {
    double latitude = 0.0;   // degrees, WGS-84
    double longitude = 0.0;  // degrees, WGS-84
    double altitude = 0.0;   // metres

    friend bool operator==(const GeoPosition&, const GeoPosition&) = default;
};

struct PlanPosition {
    std::string map_id;
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const PlanPosition&, const PlanPosition&) = default;
};

struct IndoorMeta {
    std::string room_id;
    int floor = 0;  // -1 is the partially underground level
    bool outdoor_flag = false;

    friend bool operator==(const IndoorMeta&, const IndoorMeta&) = default;
};

using Position = std::variant<GeoPosition, PlanPosition>;

struct MeasurementRecord {
    MeasurementId id;
    Position position;
    std::optional<IndoorMeta> meta;
    SignalSample sample;

    bool is_outdoor_geo() const noexcept { return std::holds_alternative<GeoPosition>(position); }
    bool is_plan() const noexcept { return std::holds_alternative<PlanPosition>(position); }

    friend bool operator==(const MeasurementRecord&, const MeasurementRecord&) = default;
};

/// GeoPosition records carry no meta, PlanPosition records always do.
bool well_formed(const MeasurementRecord& record) noexcept;

}  // namespace ltem
