#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "ltem/core/types.hpp"
#include "ltem/modem/protocol.hpp"
#include "ltem/sim/scenario.hpp"

namespace ltem::sim {

/// Great-circle ground distance (haversine, mean Earth radius); altitude ignored.
double ground_distance_m(const GeoPosition& a, const GeoPosition& b);

/// Flat-earth east/north offset, accurate at building scale.
GeoPosition offset_position(const GeoPosition& origin, double east_m, double north_m);
std::pair<double, double> local_offset(const GeoPosition& origin, const GeoPosition& p);

double free_space_loss_db(double distance_m, double frequency_mhz);

/// Log-distance path loss anchored at free space:
/// PL(d) = FSPL(d0) + 10 n log10(d / d0). Requires d >= d0.
double path_loss(double distance_m, const Scenario& scenario);

/// l_b - floor_gain * max(0, floor - 1) + basement and far-facade penalties
/// + per-floor offset, clamped at 0.
double effective_building_loss(const BuildingModel& building, int floor, bool toward_bs);

/// True when (x_m, y_m) lies on the half of the footprint facing the base station.
bool faces_base_station(const BuildingModel& building, const GeoPosition& base_station, double x_m, double y_m);

struct IndoorLocation {
    std::string building_id;
    int floor = 0;
    double x_m = 0.0;
    double y_m = 0.0;

    friend bool operator==(const IndoorLocation&, const IndoorLocation&) = default;
};

using SimLocation = std::variant<GeoPosition, IndoorLocation>;

/// Geodetic position of a location (indoor: footprint offset, altitude 3 m per floor).
GeoPosition resolve_position(const Scenario& scenario, const SimLocation& location);

/// One realisation of L = L_PL + chi_PL + L_B + chi_B. l_pl is the loss in
/// excess of the reference distance (plus the site offset), so a noise-free
/// outdoor draw at d0 receives exactly rsrp_at_reference_dbm.
struct PropagationDraw {
    double l_pl = 0.0;
    double chi_pl = 0.0;
    double l_b_eff = 0.0;
    double chi_b = 0.0;
    double uncensored_rsrp = 0.0;  // dBm, before the sensitivity floor
    std::optional<double> rsrp;    // empty when uncensored_rsrp < -140

    double total_loss() const noexcept { return l_pl + chi_pl + l_b_eff + chi_b; }
};

/// Draw number `draw_index` of the scenario's propagation stream. Uses normal
/// pairs 0 (chi_PL) and 1 (chi_B) of that counter; chi_B is zero outdoors.
PropagationDraw draw_sample(const Scenario& scenario, const SimLocation& location, std::uint64_t draw_index);

/// Modem view of a draw: RSRP rounded to whole dB. RSSI = RSRP + 26,
/// RSRQ = -15, SINR = RSRP + 130 clamped to [-23, 40]; a censored draw
/// reports those indicators at the -140 dBm floor.
SignalSample to_sample(const PropagationDraw& draw, const modem::CellInfo& cell, UtcTime utc);

modem::AtResponse render_wire(const PropagationDraw& draw, const modem::CellInfo& cell);

}  // namespace ltem::sim
