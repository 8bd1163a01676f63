#include "ltem/analysis/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "ltem/core/units.hpp"

namespace ltem::analysis {

double quantile(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw AnalysisError(AnalysisErrc::empty_after_censoring, "quantile of an empty set");
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double sample_sd(std::span<const double> values) {
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / (n - 1.0));
}

DescriptiveStats describe_values(std::span<const double> values, std::size_t censored_count) {
    if (values.empty())
        throw AnalysisError(AnalysisErrc::empty_after_censoring,
                            "no numeric RSRP values (" + std::to_string(censored_count) + " censored)");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    DescriptiveStats stats;
    stats.count = sorted.size();
    stats.censored_count = censored_count;
    stats.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
    stats.min = sorted.front();
    stats.max = sorted.back();
    if (sorted.size() >= 2) stats.sd = sample_sd(sorted);
    if (sorted.size() >= 4) stats.quartiles = Quartiles{quantile(sorted, 0.25), quantile(sorted, 0.5), quantile(sorted, 0.75)};
    return stats;
}

namespace {

struct Split {
    std::vector<double> values;
    std::size_t censored = 0;
};

template <class Pred>
Split rsrp_values(std::span<const MeasurementRecord> records, Pred keep) {
    Split out;
    for (const auto& r : records) {
        if (!keep(r)) continue;
        if (r.sample.rsrp) {
            out.values.push_back(*r.sample.rsrp);
        } else {
            ++out.censored;
        }
    }
    return out;
}

bool indoor_record(const MeasurementRecord& r) { return r.is_plan() && r.meta.has_value(); }

double mean_of(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

}  // namespace

DescriptiveStats describe(std::span<const MeasurementRecord> records) {
    const auto split = rsrp_values(records, [](const auto&) { return true; });
    return describe_values(split.values, split.censored);
}

double linear_mean_dbm(std::span<const double> values_dbm) {
    if (values_dbm.empty()) throw AnalysisError(AnalysisErrc::empty_after_censoring, "no values to average");
    double sum = 0.0;
    for (double v : values_dbm) sum += dbm_to_mw(v);
    return mw_to_dbm(sum / static_cast<double>(values_dbm.size()));
}

std::vector<MeasurementRecord> filter(std::span<const MeasurementRecord> records, const RecordFilter& f,
                                      const ColorScale& scale) {
    std::vector<MeasurementRecord> out;
    for (const auto& r : records) {
        if (f.indoor && *f.indoor != r.is_plan()) continue;
        if (f.floor && (!r.meta || r.meta->floor != *f.floor)) continue;
        if (f.room && (!r.meta || r.meta->room_id != *f.room)) continue;
        if (f.bin && scale.classify(r.sample.rsrp) != *f.bin) continue;
        out.push_back(r);
    }
    return out;
}

RoomSdSummary room_sd_summary(std::span<const MeasurementRecord> records) {
    std::map<std::string, std::vector<double>> by_room;
    for (const auto& r : records) {
        if (!indoor_record(r)) continue;
        auto& values = by_room[r.meta->room_id];
        if (r.sample.rsrp) values.push_back(*r.sample.rsrp);
    }

    RoomSdSummary summary;
    double total = 0.0;
    for (const auto& [room, values] : by_room) {
        if (values.size() < 2) {
            summary.excluded.push_back(room);
            continue;
        }
        const double sd = sample_sd(values);
        summary.rooms[room] = RoomSd{sd, values.size()};
        total += sd;
    }
    if (summary.rooms.empty())
        throw AnalysisError(AnalysisErrc::no_eligible_rooms, "no room has two or more numeric samples");
    summary.mean_sd = total / static_cast<double>(summary.rooms.size());
    return summary;
}

FloorGainSeries floor_height_gain(std::span<const MeasurementRecord> records, std::optional<int> fit_from_floor) {
    std::map<int, Split> by_floor;
    for (const auto& r : records) {
        if (!indoor_record(r)) continue;
        auto& split = by_floor[r.meta->floor];
        if (r.sample.rsrp) {
            split.values.push_back(*r.sample.rsrp);
        } else {
            ++split.censored;
        }
    }

    FloorGainSeries series;
    for (const auto& [floor, split] : by_floor) {
        if (split.values.empty()) {
            series.censored_only.push_back(floor);
            continue;
        }
        series.floors[floor] = FloorSummary{*std::max_element(split.values.begin(), split.values.end()),
                                            mean_of(split.values), split.values.size(), split.censored};
    }

    std::vector<std::pair<double, double>> points;
    for (const auto& [floor, summary] : series.floors)
        if (!fit_from_floor || floor >= *fit_from_floor) points.emplace_back(floor, summary.mean);
    if (points.size() < 2)
        throw AnalysisError(AnalysisErrc::insufficient_floors,
                            "need two floors with numeric samples, have " + std::to_string(points.size()));

    series.fit_from_floor = fit_from_floor.value_or(static_cast<int>(points.front().first));
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(points.size());
    my /= static_cast<double>(points.size());
    double sxy = 0.0, sxx = 0.0;
    for (const auto& [x, y] : points) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    series.slope = sxy / sxx;
    return series;
}

BuildingLossEstimate combine_building_loss(const SideSummary& outdoor, const SideSummary& indoor) {
    if (outdoor.count == 0) throw AnalysisError(AnalysisErrc::empty_side, "no numeric outdoor samples");
    if (indoor.count == 0) throw AnalysisError(AnalysisErrc::empty_side, "no numeric indoor samples");
    BuildingLossEstimate est;
    est.outdoor = outdoor;
    est.indoor = indoor;
    est.loss_mean = outdoor.mean - indoor.mean;
    est.loss_sd = std::hypot(outdoor.sd, indoor.sd);
    est.lower_bound = indoor.censored_count > 0;
    return est;
}

namespace {

SideSummary summarize(const Split& split) {
    SideSummary side;
    side.count = split.values.size();
    side.censored_count = split.censored;
    if (side.count > 0) side.mean = mean_of(split.values);
    // a single value has no spread estimate; report 0
    if (side.count >= 2) side.sd = sample_sd(split.values);
    return side;
}

}  // namespace

BuildingLossEstimate building_loss(std::span<const MeasurementRecord> outdoor,
                                   std::span<const MeasurementRecord> indoor, std::vector<int> floors) {
    const auto out = rsrp_values(outdoor, [](const MeasurementRecord& r) { return r.is_outdoor_geo(); });
    const auto in = rsrp_values(indoor, [&](const MeasurementRecord& r) {
        return indoor_record(r) && !r.meta->outdoor_flag &&
               std::find(floors.begin(), floors.end(), r.meta->floor) != floors.end();
    });
    return combine_building_loss(summarize(out), summarize(in));
}

std::vector<FloorAttenuation> floor_attenuation(std::span<const MeasurementRecord> records) {
    const auto out = rsrp_values(records, [](const MeasurementRecord& r) { return r.is_outdoor_geo(); });
    if (out.values.empty()) throw AnalysisError(AnalysisErrc::empty_side, "no numeric outdoor samples");
    const double outdoor_mean = mean_of(out.values);

    std::map<int, Split> by_floor;
    for (const auto& r : records) {
        if (!indoor_record(r) || r.meta->outdoor_flag) continue;
        auto& split = by_floor[r.meta->floor];
        if (r.sample.rsrp) {
            split.values.push_back(*r.sample.rsrp);
        } else {
            ++split.censored;
        }
    }

    std::vector<FloorAttenuation> result;
    for (const auto& [floor, split] : by_floor) {
        FloorAttenuation fa;
        fa.floor = floor;
        fa.count = split.values.size();
        fa.censored_count = split.censored;
        if (split.values.empty()) {
            fa.loss_lower_bound = outdoor_mean - kSensitivityFloorDbm;
        } else {
            fa.loss_mean = outdoor_mean - mean_of(split.values);
        }
        result.push_back(fa);
    }
    return result;
}

std::vector<ScatterPoint> scatter3d_export(std::span<const MeasurementRecord> records, const ColorScale& scale) {
    std::vector<ScatterPoint> points;
    for (const auto& r : records) {
        if (!indoor_record(r)) continue;
        const auto& plan = std::get<PlanPosition>(r.position);
        points.push_back(ScatterPoint{r.id, plan.map_id, r.meta->room_id, plan.x, plan.y, r.meta->floor,
                                      r.sample.rsrp, scale.classify(r.sample.rsrp)});
    }
    return points;
}

}  // namespace ltem::analysis
