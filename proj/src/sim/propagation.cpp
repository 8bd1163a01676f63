#include "ltem/sim/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ltem/sim/rng.hpp"

namespace ltem::sim {

namespace {

constexpr double kEarthRadiusM = 6371008.8;
constexpr double kFloorHeightM = 3.0;
constexpr std::uint64_t kPropagationStream = 1;

double radians(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace

double ground_distance_m(const GeoPosition& a, const GeoPosition& b) {
    const double dlat = radians(b.latitude - a.latitude);
    const double dlon = radians(b.longitude - a.longitude);
    const double h = std::pow(std::sin(dlat / 2.0), 2) +
                     std::cos(radians(a.latitude)) * std::cos(radians(b.latitude)) * std::pow(std::sin(dlon / 2.0), 2);
    return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

GeoPosition offset_position(const GeoPosition& origin, double east_m, double north_m) {
    GeoPosition p = origin;
    p.latitude += north_m / kEarthRadiusM * 180.0 / std::numbers::pi;
    p.longitude += east_m / (kEarthRadiusM * std::cos(radians(origin.latitude))) * 180.0 / std::numbers::pi;
    return p;
}

std::pair<double, double> local_offset(const GeoPosition& origin, const GeoPosition& p) {
    const double north = radians(p.latitude - origin.latitude) * kEarthRadiusM;
    const double east = radians(p.longitude - origin.longitude) * kEarthRadiusM * std::cos(radians(origin.latitude));
    return {east, north};
}

double free_space_loss_db(double distance_m, double frequency_mhz) {
    return 32.44 + 20.0 * std::log10(distance_m / 1000.0) + 20.0 * std::log10(frequency_mhz);
}

double path_loss(double distance_m, const Scenario& scenario) {
    const double d0 = scenario.reference_distance_m;
    if (!(distance_m >= d0))
        throw SimError(SimErrc::distance_below_reference,
                       "distance " + std::to_string(distance_m) + " m is below the reference distance " +
                           std::to_string(d0) + " m");
    return free_space_loss_db(d0, scenario.frequency_mhz) +
           10.0 * scenario.path_loss_exponent * std::log10(distance_m / d0);
}

double effective_building_loss(const BuildingModel& b, int floor, bool toward_bs) {
    if (floor < b.min_floor || floor > b.max_floor)
        throw SimError(SimErrc::floor_out_of_range, "floor " + std::to_string(floor) + " outside building '" + b.id +
                                                         "' (" + std::to_string(b.min_floor) + ".." +
                                                         std::to_string(b.max_floor) + ")");
    double loss = b.l_b_db - b.floor_gain_db * std::max(0, floor - 1);
    if (floor < 0) loss += b.basement_extra_loss_db;
    if (!toward_bs) loss += b.facade_away_penalty_db;
    if (const auto it = b.floor_offsets_db.find(floor); it != b.floor_offsets_db.end()) loss += it->second;
    return std::max(0.0, loss);
}

bool faces_base_station(const BuildingModel& b, const GeoPosition& base_station, double x_m, double y_m) {
    const double cx = b.width_m / 2.0;
    const double cy = b.depth_m / 2.0;
    const auto [bx, by] = local_offset(b.anchor, base_station);
    return (x_m - cx) * (bx - cx) + (y_m - cy) * (by - cy) >= 0.0;
}

GeoPosition resolve_position(const Scenario& scenario, const SimLocation& location) {
    if (const auto* geo = std::get_if<GeoPosition>(&location)) return *geo;
    const auto& indoor = std::get<IndoorLocation>(location);
    const auto& b = scenario.building(indoor.building_id);
    auto p = offset_position(b.anchor, indoor.x_m, indoor.y_m);
    p.altitude = b.anchor.altitude + kFloorHeightM * indoor.floor + 1.5;
    return p;
}

namespace {

const BuildingModel* site_of(const Scenario& scenario, const GeoPosition& p) {
    for (const auto& b : scenario.buildings) {
        const auto [x, y] = local_offset(b.anchor, p);
        const double r = b.site_radius_m;
        if (x >= -r && x <= b.width_m + r && y >= -r && y <= b.depth_m + r) return &b;
    }
    return nullptr;
}

}  // namespace

PropagationDraw draw_sample(const Scenario& scenario, const SimLocation& location, std::uint64_t draw_index) {
    const CounterRng rng(scenario.seed, kPropagationStream);
    const double z_pl = rng.normal(draw_index, 0);
    const double z_b = rng.normal(draw_index, 1);

    PropagationDraw draw;
    const BuildingModel* site = nullptr;
    GeoPosition where;
    if (const auto* indoor = std::get_if<IndoorLocation>(&location)) {
        site = &scenario.building(indoor->building_id);
        const bool toward = faces_base_station(*site, scenario.base_station, indoor->x_m, indoor->y_m);
        draw.l_b_eff = effective_building_loss(*site, indoor->floor, toward);
        draw.chi_b = site->sigma_b_db * z_b;
        where = resolve_position(scenario, location);
    } else {
        where = std::get<GeoPosition>(location);
        site = site_of(scenario, where);
    }

    const double distance = ground_distance_m(scenario.base_station, where);
    draw.l_pl = path_loss(distance, scenario) - path_loss(scenario.reference_distance_m, scenario);
    if (site) draw.l_pl += site->site_offset_db;
    draw.chi_pl = scenario.sigma_pl_db * z_pl;

    draw.uncensored_rsrp = scenario.rsrp_at_reference_dbm - draw.total_loss();
    if (draw.uncensored_rsrp >= kSensitivityFloorDbm) draw.rsrp = draw.uncensored_rsrp;
    return draw;
}

SignalSample to_sample(const PropagationDraw& draw, const modem::CellInfo& cell, UtcTime utc) {
    SignalSample s;
    if (draw.rsrp) s.rsrp = std::clamp(std::round(*draw.rsrp), kSensitivityFloorDbm, kRsrpMaxDbm);
    const double level = s.rsrp.value_or(kSensitivityFloorDbm);
    s.rssi = level + 26.0;
    s.rsrq = -15.0;
    s.sinr = std::clamp(level + 130.0, kSinrMinDb, kSinrMaxDb);
    s.tac = cell.tac;
    s.cid = cell.cid;
    s.utc = utc;
    return s;
}

modem::AtResponse render_wire(const PropagationDraw& draw, const modem::CellInfo& cell) {
    return modem::render_serving_cell(to_sample(draw, cell, UtcTime{}), cell);
}

}  // namespace ltem::sim
