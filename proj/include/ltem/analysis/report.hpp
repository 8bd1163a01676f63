#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ltem/analysis/analysis.hpp"

namespace ltem::analysis {

/// Everything the evaluation reports for one building. Parts that cannot be
/// computed (too few floors, no outdoor data, ...) stay empty and the reason
/// is listed in `notes`.
struct CampaignReport {
    std::string campaign_id;
    std::string building_label;
    std::optional<DescriptiveStats> overall;
    std::optional<DescriptiveStats> outdoor;
    std::optional<DescriptiveStats> indoor;
    std::map<int, DescriptiveStats> per_floor;
    std::optional<RoomSdSummary> rooms;
    std::optional<FloorGainSeries> floor_gain;
    std::optional<BuildingLossEstimate> building_loss;
    std::vector<FloorAttenuation> floor_attenuation;
    std::vector<std::string> notes;
};

CampaignReport build_report(std::span<const MeasurementRecord> records, std::string campaign_id = {},
                            std::string building_label = {});

std::string render_text(const CampaignReport& report);

}  // namespace ltem::analysis
