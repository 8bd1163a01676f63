#include "ltem/analysis/report.hpp"

#include <cstdio>
#include <set>

namespace ltem::analysis {

namespace {

template <class Fn>
auto attempt(std::vector<std::string>& notes, const char* what, Fn&& fn) -> std::optional<decltype(fn())> {
    try {
        return fn();
    } catch (const AnalysisError& e) {
        notes.push_back(std::string(what) + ": " + e.what());
        return std::nullopt;
    }
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::string stats_line(const DescriptiveStats& s) {
    std::string line = "n=" + std::to_string(s.count) + " censored=" + std::to_string(s.censored_count) +
                       " mean=" + fmt("%.1f", s.mean) + " dBm";
    if (s.sd) line += " sd=" + fmt("%.1f", *s.sd) + " dB";
    if (s.quartiles)
        line += " q1/median/q3=" + fmt("%.1f", s.quartiles->q1) + "/" + fmt("%.1f", s.quartiles->median) + "/" +
                fmt("%.1f", s.quartiles->q3);
    line += " min/max=" + fmt("%.0f", s.min) + "/" + fmt("%.0f", s.max) + " spread=" + fmt("%.0f", s.spread()) + " dB";
    return line;
}

}  // namespace

CampaignReport build_report(std::span<const MeasurementRecord> records, std::string campaign_id,
                            std::string building_label) {
    CampaignReport report;
    report.campaign_id = std::move(campaign_id);
    report.building_label = std::move(building_label);
    auto& notes = report.notes;

    const auto outdoor = filter(records, RecordFilter{.indoor = false});
    const auto indoor = filter(records, RecordFilter{.indoor = true});

    report.overall = attempt(notes, "overall", [&] { return describe(records); });
    report.outdoor = attempt(notes, "outdoor", [&] { return describe(outdoor); });
    report.indoor = attempt(notes, "indoor", [&] { return describe(indoor); });

    std::set<int> floors;
    for (const auto& r : indoor) floors.insert(r.meta->floor);
    for (int floor : floors) {
        const auto on_floor = filter(indoor, RecordFilter{.floor = floor});
        if (auto s = attempt(notes, ("floor " + std::to_string(floor)).c_str(), [&] { return describe(on_floor); }))
            report.per_floor.emplace(floor, *s);
    }

    report.rooms = attempt(notes, "room variability", [&] { return room_sd_summary(indoor); });
    report.floor_gain = attempt(notes, "floor height gain", [&] { return floor_height_gain(indoor); });
    report.building_loss = attempt(notes, "building loss", [&] { return building_loss(outdoor, indoor); });
    if (auto fa = attempt(notes, "floor attenuation", [&] { return floor_attenuation(records); }))
        report.floor_attenuation = *fa;
    return report;
}

std::string render_text(const CampaignReport& r) {
    std::string out = "== Building " + (r.building_label.empty() ? std::string("(unlabelled)") : r.building_label);
    if (!r.campaign_id.empty()) out += " [campaign " + r.campaign_id + "]";
    out += " ==\n";

    out += "\nRSRP spread\n";
    if (r.overall) out += "  all      " + stats_line(*r.overall) + "\n";
    if (r.outdoor) out += "  outdoor  " + stats_line(*r.outdoor) + "\n";
    if (r.indoor) out += "  indoor   " + stats_line(*r.indoor) + "\n";
    for (const auto& [floor, s] : r.per_floor) out += "  floor " + std::to_string(floor) + "  " + stats_line(s) + "\n";

    if (r.building_loss) {
        const auto& b = *r.building_loss;
        out += "\nBuilding loss (indoor floors 0 and 1)\n";
        out += "  outdoor  mean " + fmt("%.1f", b.outdoor.mean) + " dBm  sd " + fmt("%.1f", b.outdoor.sd) +
               " dB  count " + std::to_string(b.outdoor.count) + "\n";
        out += "  indoor   mean " + fmt("%.1f", b.indoor.mean) + " dBm  sd " + fmt("%.1f", b.indoor.sd) +
               " dB  count " + std::to_string(b.indoor.count) + "\n";
        out += "  loss     mean " + fmt("%.1f", b.loss_mean) + " dB  sd " + fmt("%.1f", b.loss_sd) + " dB";
        if (b.lower_bound)
            out += "  (lower bound: " + std::to_string(b.indoor.censored_count) + " censored indoor samples)";
        out += "\n";
    }

    if (!r.floor_attenuation.empty()) {
        out += "\nAttenuation per floor\n";
        for (const auto& fa : r.floor_attenuation) {
            out += "  floor " + std::to_string(fa.floor) + ": ";
            if (fa.loss_mean) {
                out += fmt("%.1f", *fa.loss_mean) + " dB";
                if (fa.censored_count > 0)
                    out += " (lower bound, " + std::to_string(fa.censored_count) + " censored)";
            } else {
                out += "> " + fmt("%.1f", *fa.loss_lower_bound) + " dB (no reception, " +
                       std::to_string(fa.censored_count) + " censored samples)";
            }
            out += "\n";
        }
    }

    if (r.floor_gain) {
        out += "\nFloor height gain\n";
        for (const auto& [floor, s] : r.floor_gain->floors)
            out += "  floor " + std::to_string(floor) + ": best " + fmt("%.0f", s.best) + " dBm, mean " +
                   fmt("%.1f", s.mean) + " dBm (n=" + std::to_string(s.count) + ")\n";
        for (int floor : r.floor_gain->censored_only)
            out += "  floor " + std::to_string(floor) + ": no reception\n";
        out += "  slope " + fmt("%.2f", r.floor_gain->slope) + " dB/floor\n";
    }

    if (r.rooms) {
        out += "\nRoom variability\n  mean within-room sd " + fmt("%.1f", r.rooms->mean_sd) + " dB over " +
               std::to_string(r.rooms->rooms.size()) + " rooms";
        if (!r.rooms->excluded.empty()) out += " (" + std::to_string(r.rooms->excluded.size()) + " excluded)";
        out += "\n";
    }

    if (!r.notes.empty()) {
        out += "\nNotes\n";
        for (const auto& n : r.notes) out += "  " + n + "\n";
    }
    return out;
}

}  // namespace ltem::analysis
