#include "ltem/service/json.hpp"

#include <stdexcept>

#include "ltem/core/text.hpp"

namespace ltem::service {

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::uint32_t positive_count(const Json& body, const char* key, std::uint32_t fallback) {
    if (!body.contains(key)) return fallback;
    const auto& v = body.at(key);
    if (!v.is_number_integer()) throw std::invalid_argument(std::string(key) + " must be an integer");
    const auto n = v.get<long long>();
    if (n < 0 || n > 1'000'000) throw std::invalid_argument(std::string(key) + " out of range");
    return static_cast<std::uint32_t>(n);
}

}  // namespace

Json record_to_json(const MeasurementRecord& r, const ColorScale& scale) {
    Json j;
    j["id"] = render_id(r.id);
    j["position_id"] = r.id.position_id;
    j["sample_id"] = r.id.sample_id;
    if (const auto* geo = std::get_if<GeoPosition>(&r.position)) {
        j["kind"] = "outdoor";
        j["latitude"] = geo->latitude;
        j["longitude"] = geo->longitude;
        j["altitude"] = geo->altitude;
    } else {
        const auto& plan = std::get<PlanPosition>(r.position);
        j["kind"] = "indoor";
        j["map"] = plan.map_id;
        j["x"] = plan.x;
        j["y"] = plan.y;
        if (r.meta) {
            j["room"] = r.meta->room_id;
            j["floor"] = r.meta->floor;
            j["outdoor_flag"] = r.meta->outdoor_flag;
        }
    }
    j["rsrp"] = optional_number(r.sample.rsrp);
    j["censored"] = r.sample.censored();
    j["rsrq"] = r.sample.rsrq;
    j["rssi"] = r.sample.rssi;
    j["sinr"] = r.sample.sinr;
    j["tac"] = r.sample.tac;
    j["cid"] = r.sample.cid;
    j["utc"] = text::format_iso8601(r.sample.utc);
    j["bin"] = std::string(to_string(scale.classify(r.sample.rsrp)));
    return j;
}

Json plan_to_json(const campaign::FloorPlan& plan) {
    return Json{{"id", plan.id},
                {"filename", plan.filename},
                {"content_type", plan.content_type},
                {"width", plan.width},
                {"height", plan.height},
                {"image", "/api/v1/plans/" + plan.id + "/image"}};
}

Json settings_to_json(const campaign::MeasurementSettings& s) {
    return Json{{"gnss_fix_count", s.gnss_fix_count},
                {"samples_per_position", s.samples_per_position},
                {"interval_ms", s.interval.count()},
                {"drx_cycle_ms", s.drx_cycle.count()}};
}

campaign::MeasurementSettings settings_from_json(const Json& body, campaign::MeasurementSettings base) {
    if (body.is_null()) return base;
    if (!body.is_object()) throw std::invalid_argument("settings must be an object");
    base.gnss_fix_count = positive_count(body, "gnss_fix_count", base.gnss_fix_count);
    base.samples_per_position = positive_count(body, "samples_per_position", base.samples_per_position);
    if (body.contains("interval_ms")) {
        const auto& v = body.at("interval_ms");
        if (!v.is_number_integer()) throw std::invalid_argument("interval_ms must be an integer");
        base.interval = std::chrono::milliseconds{v.get<long long>()};
    }
    return base;
}

Json stats_to_json(const analysis::DescriptiveStats& s) {
    Json j{{"count", s.count},   {"censored_count", s.censored_count}, {"mean", s.mean},
           {"sd", optional_number(s.sd)}, {"min", s.min}, {"max", s.max}, {"spread", s.spread()}};
    if (s.quartiles) {
        j["q1"] = s.quartiles->q1;
        j["median"] = s.quartiles->median;
        j["q3"] = s.quartiles->q3;
    } else {
        j["q1"] = j["median"] = j["q3"] = nullptr;
    }
    return j;
}

Json report_to_json(const analysis::CampaignReport& r) {
    auto opt_stats = [](const std::optional<analysis::DescriptiveStats>& s) {
        return s ? stats_to_json(*s) : Json(nullptr);
    };
    Json j;
    j["campaign_id"] = r.campaign_id;
    j["building"] = r.building_label;
    j["overall"] = opt_stats(r.overall);
    j["outdoor"] = opt_stats(r.outdoor);
    j["indoor"] = opt_stats(r.indoor);

    Json floors = Json::array();
    for (const auto& [floor, s] : r.per_floor) {
        auto row = stats_to_json(s);
        row["floor"] = floor;
        floors.push_back(std::move(row));
    }
    j["floors"] = std::move(floors);

    if (r.building_loss) {
        const auto& b = *r.building_loss;
        auto side = [](const analysis::SideSummary& s) {
            return Json{{"mean", s.mean}, {"sd", s.sd}, {"count", s.count}, {"censored_count", s.censored_count}};
        };
        j["building_loss"] = Json{{"outdoor", side(b.outdoor)},
                                  {"indoor", side(b.indoor)},
                                  {"loss_mean", b.loss_mean},
                                  {"loss_sd", b.loss_sd},
                                  {"lower_bound", b.lower_bound}};
    } else {
        j["building_loss"] = nullptr;
    }

    Json attenuation = Json::array();
    for (const auto& fa : r.floor_attenuation)
        attenuation.push_back(Json{{"floor", fa.floor},
                                   {"count", fa.count},
                                   {"censored_count", fa.censored_count},
                                   {"loss_mean", optional_number(fa.loss_mean)},
                                   {"loss_lower_bound", optional_number(fa.loss_lower_bound)}});
    j["floor_attenuation"] = std::move(attenuation);

    if (r.floor_gain) {
        Json per_floor = Json::array();
        for (const auto& [floor, s] : r.floor_gain->floors)
            per_floor.push_back(Json{{"floor", floor}, {"best", s.best}, {"mean", s.mean}, {"count", s.count},
                                     {"censored_count", s.censored_count}});
        j["floor_gain"] = Json{{"floors", std::move(per_floor)},
                               {"censored_only", r.floor_gain->censored_only},
                               {"slope", r.floor_gain->slope},
                               {"fit_from_floor", r.floor_gain->fit_from_floor}};
    } else {
        j["floor_gain"] = nullptr;
    }

    if (r.rooms) {
        Json rooms = Json::object();
        for (const auto& [room, sd] : r.rooms->rooms) rooms[room] = Json{{"sd", sd.sd}, {"count", sd.count}};
        j["rooms"] = Json{{"mean_sd", r.rooms->mean_sd}, {"rooms", std::move(rooms)}, {"excluded", r.rooms->excluded}};
    } else {
        j["rooms"] = nullptr;
    }
    j["notes"] = r.notes;
    return j;
}

Json scatter_to_json(const analysis::ScatterPoint& p) {
    return Json{{"id", render_id(p.id)}, {"map", p.map_id},   {"room", p.room_id},
                {"x", p.x},              {"y", p.y},          {"floor", p.floor},
                {"rsrp", optional_number(p.rsrp)}, {"bin", std::string(to_string(p.bin))}};
}

Json color_scale_to_json(const ColorScale& scale) {
    return Json{{"good_min", scale.good_min}, {"fair_min", scale.fair_min}, {"poor_min", scale.poor_min}};
}

}  // namespace ltem::service
