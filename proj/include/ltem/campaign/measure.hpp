#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ltem/campaign/campaign.hpp"
#include "ltem/core/clock.hpp"
#include "ltem/modem/backend.hpp"

namespace ltem::campaign {

/// Samples gathered for one position that are not yet part of a campaign.
struct PendingPosition {
    Position position;
    std::optional<IndoorMeta> meta;
    std::vector<SignalSample> samples;
};

/// samples_per_position reads, `interval` apart.
std::vector<SignalSample> sample_series(const MeasurementSettings& settings, modem::ModemBackend& backend,
                                        Clock& clock);

/// Averaged GNSS position followed by the sample series. Any failure aborts
/// the whole position.
PendingPosition collect_outdoor(const MeasurementSettings& settings, modem::ModemBackend& backend, Clock& clock);

/// Checks the click against the plan, then samples. Censored readings are kept.
PendingPosition collect_indoor(const Campaign& campaign, const MeasurementSettings& settings,
                               modem::ModemBackend& backend, Clock& clock, const PlanPosition& click,
                               const IndoorMeta& meta);

std::vector<MeasurementRecord> measure_outdoor(Campaign& campaign, const MeasurementSettings& settings,
                                               modem::ModemBackend& backend, Clock& clock);

std::vector<MeasurementRecord> measure_indoor(Campaign& campaign, const MeasurementSettings& settings,
                                              modem::ModemBackend& backend, Clock& clock, const PlanPosition& click,
                                              const IndoorMeta& meta);

/// Decodes, names the plan after the file stem and adds it.
const FloorPlan& upload_plan(Campaign& campaign, std::span<const std::uint8_t> image, std::string_view name);

}  // namespace ltem::campaign
