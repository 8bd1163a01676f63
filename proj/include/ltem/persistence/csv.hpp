#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "ltem/campaign/campaign.hpp"
#include "ltem/core/error.hpp"

namespace ltem::persistence {

enum class CsvErrc { schema_mismatch, row_error, io };

class CsvError : public CodedError<CsvErrc> {
public:
    CsvError(CsvErrc code, const std::string& what, std::size_t line = 0, std::string field = {})
        : CodedError(code, what), line(line), field(std::move(field)) {}

    std::size_t line;   // 1-based, header is line 1; 0 when not row specific
    std::string field;  // offending column
};

inline constexpr std::array<std::string_view, 12> kOutdoorColumns = {
    "id", "latitude", "longitude", "altitude", "utc", "date", "tac", "cid", "rsrp", "rsrq", "rssi", "sinr"};

inline constexpr std::array<std::string_view, 15> kIndoorColumns = {
    "id",   "utc",  "date", "tac",   "cid",          "rsrp", "rsrq", "rssi",
    "sinr", "room", "floor", "outdoor_flag", "map", "x",    "y"};

struct CsvFiles {
    std::string outdoor;
    std::string indoor;
};

/// UTF-8, comma separated, LF line ends, header first, rows in record order.
/// Censored rsrp is an empty field; numbers use the shortest round-trip form;
/// utc is the ISO-8601 time of day ("10:00:03.000Z") next to the date.
CsvFiles export_csv(const campaign::Campaign& campaign);

campaign::Campaign import_csv(std::string_view outdoor, std::string_view indoor, std::string campaign_id = "campaign",
                              std::string building_label = {});

/// Directory layout: outdoor.csv, indoor.csv, manifest.json, plans/<file>.
void save_campaign(const campaign::Campaign& campaign, const std::filesystem::path& dir);
campaign::Campaign load_campaign(const std::filesystem::path& dir);

}  // namespace ltem::persistence
