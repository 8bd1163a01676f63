#include "ltem/sim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ltem/core/text.hpp"
#include "ltem/sim/propagation.hpp"

namespace ltem::sim {

using nlohmann::json;

const BuildingModel& Scenario::building(std::string_view id) const {
    for (const auto& b : buildings)
        if (b.id == id) return b;
    throw SimError(SimErrc::unknown_building, "scenario has no building '" + std::string(id) + "'");
}

void validate(const Scenario& s) {
    auto fail = [](const std::string& why) { throw SimError(SimErrc::invalid_scenario, "invalid scenario: " + why); };
    if (!(s.path_loss_exponent > 0.0)) fail("path_loss_exponent must be > 0");
    if (!(s.sigma_pl_db >= 0.0)) fail("sigma_pl_db must be >= 0");
    if (!(s.reference_distance_m > 0.0)) fail("reference_distance_m must be > 0");
    if (!(s.frequency_mhz > 0.0)) fail("frequency_mhz must be > 0");
    if (!(s.gnss_sigma_m >= 0.0)) fail("gnss_sigma_m must be >= 0");
    std::set<std::string> ids;
    for (const auto& b : s.buildings) {
        if (b.id.empty()) fail("building without id");
        if (!ids.insert(b.id).second) fail("duplicate building id '" + b.id + "'");
        if (b.min_floor > b.max_floor) fail("building '" + b.id + "' has min_floor > max_floor");
        if (!(b.width_m > 0.0) || !(b.depth_m > 0.0)) fail("building '" + b.id + "' needs a positive footprint");
        if (!(b.l_b_db >= 0.0)) fail("building '" + b.id + "' l_b_db must be >= 0");
        if (!(b.sigma_b_db >= 0.0)) fail("building '" + b.id + "' sigma_b_db must be >= 0");
        if (!(b.floor_gain_db >= 0.0)) fail("building '" + b.id + "' floor_gain_db must be >= 0");
        if (!(b.site_radius_m >= 0.0)) fail("building '" + b.id + "' site_radius_m must be >= 0");
    }
}

Scenario default_scenario() {
    Scenario s;
    s.base_station = GeoPosition{50.6960, 7.0950, 211.0};
    BuildingModel b;
    b.id = "default";
    b.width_m = 40.0;
    b.depth_m = 15.0;
    b.anchor = offset_position(s.base_station, -b.width_m / 2.0, 5000.0 - b.depth_m / 2.0);
    b.anchor.altitude = 60.0;
    s.buildings.push_back(b);
    return s;
}

namespace {

json position_to_json(const GeoPosition& p) {
    return {{"latitude", p.latitude}, {"longitude", p.longitude}, {"altitude", p.altitude}};
}

GeoPosition position_from_json(const json& j) {
    return GeoPosition{j.at("latitude").get<double>(), j.at("longitude").get<double>(), j.value("altitude", 0.0)};
}

std::string hex(std::uint32_t v) {
    std::ostringstream out;
    out << std::uppercase << std::hex << v;
    return out.str();
}

std::uint32_t hex_value(const json& j, const char* key, std::uint32_t fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint32_t>();
    const auto parsed = text::parse_hex_u32(v.get<std::string>());
    if (!parsed) throw SimError(SimErrc::invalid_scenario, std::string("cell.") + key + " is not hexadecimal");
    return *parsed;
}

}  // namespace

Scenario scenario_from_json(std::string_view json_text) {
    Scenario s;
    try {
        const auto j = json::parse(json_text);
        s.base_station = position_from_json(j.at("base_station"));
        s.rsrp_at_reference_dbm = j.value("rsrp_at_reference_dbm", s.rsrp_at_reference_dbm);
        s.reference_distance_m = j.value("reference_distance_m", s.reference_distance_m);
        s.path_loss_exponent = j.value("path_loss_exponent", s.path_loss_exponent);
        s.sigma_pl_db = j.value("sigma_pl_db", s.sigma_pl_db);
        s.frequency_mhz = j.value("frequency_mhz", s.frequency_mhz);
        s.seed = j.value("seed", s.seed);
        s.gnss_sigma_m = j.value("gnss_sigma_m", s.gnss_sigma_m);

        if (j.contains("cell")) {
            const auto& c = j.at("cell");
            s.cell.state = c.value("state", s.cell.state);
            s.cell.rat = c.value("rat", s.cell.rat);
            s.cell.duplex = c.value("duplex", s.cell.duplex);
            s.cell.mcc = c.value("mcc", s.cell.mcc);
            s.cell.mnc = c.value("mnc", s.cell.mnc);
            s.cell.cid = hex_value(c, "cid", s.cell.cid);
            s.cell.pcid = hex_value(c, "pcid", s.cell.pcid);
            s.cell.tac = hex_value(c, "tac", s.cell.tac);
            s.cell.earfcn = c.value("earfcn", s.cell.earfcn);
            s.cell.band = c.value("band", s.cell.band);
            s.cell.ul_bandwidth = c.value("ul_bandwidth", s.cell.ul_bandwidth);
            s.cell.dl_bandwidth = c.value("dl_bandwidth", s.cell.dl_bandwidth);
        }

        const auto buildings = j.value("buildings", json::array());
        for (const auto& jb : buildings) {
            BuildingModel b;
            b.id = jb.at("id").get<std::string>();
            b.anchor = position_from_json(jb.at("anchor"));
            b.width_m = jb.value("width_m", b.width_m);
            b.depth_m = jb.value("depth_m", b.depth_m);
            b.min_floor = jb.value("min_floor", b.min_floor);
            b.max_floor = jb.value("max_floor", b.max_floor);
            b.l_b_db = jb.value("l_b_db", b.l_b_db);
            b.sigma_b_db = jb.value("sigma_b_db", b.sigma_b_db);
            b.floor_gain_db = jb.value("floor_gain_db", b.floor_gain_db);
            b.basement_extra_loss_db = jb.value("basement_extra_loss_db", b.basement_extra_loss_db);
            b.facade_away_penalty_db = jb.value("facade_away_penalty_db", b.facade_away_penalty_db);
            b.site_offset_db = jb.value("site_offset_db", b.site_offset_db);
            b.site_radius_m = jb.value("site_radius_m", b.site_radius_m);
            const auto offsets = jb.value("floor_offsets_db", json::object());
            for (const auto& [floor, offset] : offsets.items()) {
                const auto f = text::parse_int(floor);
                if (!f) throw SimError(SimErrc::invalid_scenario, "floor_offsets_db key '" + floor + "' is not a floor");
                b.floor_offsets_db[static_cast<int>(*f)] = offset.get<double>();
            }
            s.buildings.push_back(std::move(b));
        }
    } catch (const json::exception& e) {
        throw SimError(SimErrc::invalid_scenario, std::string("scenario file: ") + e.what());
    }
    validate(s);
    return s;
}

std::string scenario_to_json(const Scenario& s) {
    json j;
    j["base_station"] = position_to_json(s.base_station);
    j["rsrp_at_reference_dbm"] = s.rsrp_at_reference_dbm;
    j["reference_distance_m"] = s.reference_distance_m;
    j["path_loss_exponent"] = s.path_loss_exponent;
    j["sigma_pl_db"] = s.sigma_pl_db;
    j["frequency_mhz"] = s.frequency_mhz;
    j["seed"] = s.seed;
    j["gnss_sigma_m"] = s.gnss_sigma_m;
    j["cell"] = {{"state", s.cell.state},   {"rat", s.cell.rat},       {"duplex", s.cell.duplex},
                 {"mcc", s.cell.mcc},       {"mnc", s.cell.mnc},       {"cid", hex(s.cell.cid)},
                 {"pcid", hex(s.cell.pcid)}, {"tac", hex(s.cell.tac)}, {"earfcn", s.cell.earfcn},
                 {"band", s.cell.band},     {"ul_bandwidth", s.cell.ul_bandwidth},
                 {"dl_bandwidth", s.cell.dl_bandwidth}};
    j["buildings"] = json::array();
    for (const auto& b : s.buildings) {
        json offsets = json::object();
        for (const auto& [floor, offset] : b.floor_offsets_db) offsets[std::to_string(floor)] = offset;
        j["buildings"].push_back({{"id", b.id},
                                  {"anchor", position_to_json(b.anchor)},
                                  {"width_m", b.width_m},
                                  {"depth_m", b.depth_m},
                                  {"min_floor", b.min_floor},
                                  {"max_floor", b.max_floor},
                                  {"l_b_db", b.l_b_db},
                                  {"sigma_b_db", b.sigma_b_db},
                                  {"floor_gain_db", b.floor_gain_db},
                                  {"basement_extra_loss_db", b.basement_extra_loss_db},
                                  {"facade_away_penalty_db", b.facade_away_penalty_db},
                                  {"floor_offsets_db", offsets},
                                  {"site_offset_db", b.site_offset_db},
                                  {"site_radius_m", b.site_radius_m}});
    }
    return j.dump(2);
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SimError(SimErrc::invalid_scenario, "cannot read scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

}  // namespace ltem::sim
