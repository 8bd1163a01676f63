#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ltem/core/error.hpp"
#include "ltem/core/types.hpp"
#include "ltem/modem/protocol.hpp"

namespace ltem::sim {

enum class SimErrc {
    invalid_scenario,
    unknown_building,
    floor_out_of_range,
    distance_below_reference,
};

using SimError = CodedError<SimErrc>;

/// Rectangular building with per-floor attenuation parameters. The footprint
/// spans width_m east and depth_m north of the anchor (its south-west corner);
/// indoor positions are given in those local metres.
struct BuildingModel {
    std::string id;
    GeoPosition anchor;
    double width_m = 40.0;
    double depth_m = 15.0;
    int min_floor = -1;
    int max_floor = 4;

    double l_b_db = 15.0;                   // mean building loss on floors 0 and 1
    double sigma_b_db = 4.0;                // indoor variability
    double floor_gain_db = 2.0;             // per floor above floor 1
    double basement_extra_loss_db = 30.0;   // below floor 0
    double facade_away_penalty_db = 10.0;   // far side from the base station
    std::map<int, double> floor_offsets_db; // extra loss on individual floors

    double site_offset_db = 0.0;  // outdoor path-loss offset around the site (LOS < 0 < NLOS)
    double site_radius_m = 30.0;  // outdoor points this close to the footprint get the offset
};

struct Scenario {
    GeoPosition base_station;
    double rsrp_at_reference_dbm = -49.0;  // RSRP at reference_distance_m
    double reference_distance_m = 100.0;
    double path_loss_exponent = 3.0;
    double sigma_pl_db = 6.0;
    double frequency_mhz = 450.0;
    std::uint64_t seed = 42;
    double gnss_sigma_m = 1.5;
    modem::CellInfo cell;
    std::vector<BuildingModel> buildings;

    const BuildingModel& building(std::string_view id) const;
};

/// Throws SimError(invalid_scenario) on n <= 0, sigma < 0, d0 <= 0, bad floor ranges or duplicate ids.
void validate(const Scenario& scenario);

/// Urban defaults: n = 3, sigma_pl = 6 dB and one building 5 km north of the
/// base station with l_b = 15 dB, sigma_b = 4 dB, 2 dB/floor, 30 dB basement
/// loss and 10 dB far-facade penalty. Outdoor RSRP next to it is about -100 dBm.
Scenario default_scenario();

Scenario scenario_from_json(std::string_view json_text);
std::string scenario_to_json(const Scenario& scenario);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace ltem::sim
