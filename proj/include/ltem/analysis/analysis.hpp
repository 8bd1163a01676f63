#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ltem/core/color_scale.hpp"
#include "ltem/core/error.hpp"
#include "ltem/core/types.hpp"

namespace ltem::analysis {

enum class AnalysisErrc {
    empty_after_censoring,
    no_eligible_rooms,
    insufficient_floors,
    empty_side,
};

using AnalysisError = CodedError<AnalysisErrc>;

// ---------------------------------------------------------------------------
// Descriptive statistics

struct Quartiles {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
};

/// Statistics over non-censored RSRP values (dB domain). sd is the sample SD
/// (n - 1) and needs two values; quartiles need four.
struct DescriptiveStats {
    std::size_t count = 0;
    std::size_t censored_count = 0;
    double mean = 0.0;
    std::optional<double> sd;
    double min = 0.0;
    double max = 0.0;
    std::optional<Quartiles> quartiles;

    double spread() const noexcept { return max - min; }
};

/// Linear interpolation between closest ranks: h = (n - 1) p on sorted data.
double quantile(std::span<const double> sorted, double p);

double sample_sd(std::span<const double> values);

DescriptiveStats describe_values(std::span<const double> values, std::size_t censored_count = 0);
DescriptiveStats describe(std::span<const MeasurementRecord> records);

/// Mean of the linear-domain (mW) powers, converted back to dBm.
double linear_mean_dbm(std::span<const double> values_dbm);

struct RecordFilter {
    std::optional<int> floor;
    std::optional<std::string> room;
    std::optional<bool> indoor;  // true: plan records, false: geo records
    std::optional<ColorBin> bin;
};

std::vector<MeasurementRecord> filter(std::span<const MeasurementRecord> records, const RecordFilter& f,
                                      const ColorScale& scale = {});

// ---------------------------------------------------------------------------
// Room variability

struct RoomSd {
    double sd = 0.0;
    std::size_t count = 0;
};

struct RoomSdSummary {
    double mean_sd = 0.0;
    std::map<std::string, RoomSd> rooms;
    std::vector<std::string> excluded;  // fewer than two usable samples
};

RoomSdSummary room_sd_summary(std::span<const MeasurementRecord> records);

// ---------------------------------------------------------------------------
// Floor height gain

struct FloorSummary {
    double best = 0.0;
    double mean = 0.0;
    std::size_t count = 0;
    std::size_t censored_count = 0;
};

struct FloorGainSeries {
    std::map<int, FloorSummary> floors;  // floors with at least one numeric sample
    std::vector<int> censored_only;      // floors without any numeric sample
    double slope = 0.0;                  // dB per floor, least squares over floor means
    int fit_from_floor = 0;
};

/// Best and mean RSRP per floor of the indoor records. The slope is fitted
/// over floors >= fit_from_floor (all floors when unset).
FloorGainSeries floor_height_gain(std::span<const MeasurementRecord> records,
                                  std::optional<int> fit_from_floor = std::nullopt);

// ---------------------------------------------------------------------------
// Building loss

struct SideSummary {
    double mean = 0.0;
    double sd = 0.0;
    std::size_t count = 0;
    std::size_t censored_count = 0;
};

struct BuildingLossEstimate {
    SideSummary outdoor;
    SideSummary indoor;
    double loss_mean = 0.0;  // outdoor mean - indoor mean
    double loss_sd = 0.0;    // root-sum-square of the side SDs
    bool lower_bound = false; // censored indoor samples were left out, true loss is larger
};

BuildingLossEstimate combine_building_loss(const SideSummary& outdoor, const SideSummary& indoor);

/// Outdoor side: geo records. Indoor side: plan records on `floors` that are
/// not flagged outdoor.
BuildingLossEstimate building_loss(std::span<const MeasurementRecord> outdoor,
                                   std::span<const MeasurementRecord> indoor, std::vector<int> floors = {0, 1});

/// Per-floor attenuation against the outdoor mean. A floor without any
/// numeric sample only yields a lower bound (outdoor mean minus the
/// sensitivity floor), never a mean.
struct FloorAttenuation {
    int floor = 0;
    std::size_t count = 0;
    std::size_t censored_count = 0;
    std::optional<double> loss_mean;
    std::optional<double> loss_lower_bound;
};

std::vector<FloorAttenuation> floor_attenuation(std::span<const MeasurementRecord> records);

// ---------------------------------------------------------------------------
// 3D scatter

struct ScatterPoint {
    MeasurementId id;
    std::string map_id;
    std::string room_id;
    double x = 0.0;
    double y = 0.0;
    int floor = 0;
    std::optional<double> rsrp;
    ColorBin bin = ColorBin::none;
};

/// One point per plan record; censored records land in the "none" bin.
std::vector<ScatterPoint> scatter3d_export(std::span<const MeasurementRecord> records, const ColorScale& scale = {});

}  // namespace ltem::analysis
