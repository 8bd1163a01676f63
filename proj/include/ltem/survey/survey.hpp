#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ltem/campaign/campaign.hpp"
#include "ltem/core/clock.hpp"
#include "ltem/sim/sim_modem.hpp"

namespace ltem::survey {

/// Scripted walk through one simulated building: positions on a ring 3 m
/// outside the footprint, then every room of every surveyed floor. Rooms
/// tile the footprint in two rows (north and south); each room is measured
/// at a fixed grid of points.
struct SurveyOptions {
    std::string building_id;
    std::uint32_t outdoor_positions = 45;
    double outdoor_standoff_m = 3.0;
    std::vector<int> floors;                // empty: every floor of the building
    int rooms_per_floor = 6;
    std::map<int, int> rooms_on_floor;      // overrides rooms_per_floor
    int points_per_room = 5;
    double pixels_per_m = 10.0;
    campaign::MeasurementSettings settings;
};

/// The building-B style plan: 45 outdoor positions, six rooms on floors
/// >= 0, two in the basement, five points per room, five samples per point.
SurveyOptions default_survey(const sim::Scenario& scenario, const std::string& building_id);

/// Plan id used for a floor: "<building>-floor<N>".
std::string plan_id(const std::string& building_id, int floor);

/// Runs the survey against `modem` (which must simulate the building) and
/// returns the resulting campaign, labelled with the building id.
campaign::Campaign run_survey(sim::SimModem& modem, Clock& clock, const SurveyOptions& options);

struct RoomPoint {
    std::string room_id;
    double x_m = 0.0;
    double y_m = 0.0;
};

/// Measurement points of one floor in footprint metres.
std::vector<RoomPoint> room_points(const sim::BuildingModel& building, int rooms, int points_per_room, int floor);

/// Points on the ring around the footprint, evenly spaced along its perimeter.
std::vector<GeoPosition> perimeter_points(const sim::BuildingModel& building, std::uint32_t count, double standoff_m);

}  // namespace ltem::survey
