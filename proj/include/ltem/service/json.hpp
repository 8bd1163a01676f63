#pragma once

#include <json.hpp>

#include "ltem/analysis/analysis.hpp"
#include "ltem/analysis/report.hpp"
#include "ltem/campaign/campaign.hpp"
#include "ltem/core/color_scale.hpp"
#include "ltem/core/types.hpp"

namespace ltem::service {

using Json = nlohmann::json;

/// Record schema:
///   {"id": "3.2", "position_id": 3, "sample_id": 2, "kind": "outdoor"|"indoor",
///    "latitude", "longitude", "altitude"            (outdoor)
///    "map", "x", "y", "room", "floor", "outdoor_flag" (indoor)
///    "rsrp": number|null, "censored", "rsrq", "rssi", "sinr", "tac", "cid",
///    "utc": ISO-8601, "bin"}
Json record_to_json(const MeasurementRecord& record, const ColorScale& scale);

Json plan_to_json(const campaign::FloorPlan& plan);
Json settings_to_json(const campaign::MeasurementSettings& settings);

/// Overrides fields of `base` present in `body` (gnss_fix_count,
/// samples_per_position, interval_ms). Throws std::invalid_argument on
/// wrongly typed values; invariants are checked separately.
campaign::MeasurementSettings settings_from_json(const Json& body, campaign::MeasurementSettings base);

Json stats_to_json(const analysis::DescriptiveStats& stats);
Json report_to_json(const analysis::CampaignReport& report);
Json scatter_to_json(const analysis::ScatterPoint& point);
Json color_scale_to_json(const ColorScale& scale);

}  // namespace ltem::service
