#include "ltem/survey/survey.hpp"

#include <algorithm>
#include <cmath>

#include "ltem/campaign/image.hpp"
#include "ltem/campaign/measure.hpp"
#include "ltem/sim/propagation.hpp"

namespace ltem::survey {

SurveyOptions default_survey(const sim::Scenario& scenario, const std::string& building_id) {
    const auto& b = scenario.building(building_id);
    SurveyOptions o;
    o.building_id = building_id;
    for (int f = b.min_floor; f <= b.max_floor; ++f) {
        o.floors.push_back(f);
        if (f < 0) o.rooms_on_floor[f] = 2;
    }
    return o;
}

std::string plan_id(const std::string& building_id, int floor) {
    return building_id + "-floor" + std::to_string(floor);
}

std::vector<RoomPoint> room_points(const sim::BuildingModel& b, int rooms, int points_per_room, int floor) {
    std::vector<RoomPoint> points;
    const int rows = rooms >= 2 ? 2 : 1;
    const int cols = (rooms + rows - 1) / rows;
    const double room_w = b.width_m / cols;
    const double room_d = b.depth_m / rows;

    const int grid_cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(points_per_room))));
    const int grid_rows = (points_per_room + grid_cols - 1) / grid_cols;

    for (int room = 0; room < rooms; ++room) {
        const int row = room / cols;
        const int col = room % cols;
        const std::string id = std::to_string(floor) + "." + std::to_string(room + 1);
        for (int k = 0; k < points_per_room; ++k) {
            const int gx = k % grid_cols;
            const int gy = k / grid_cols;
            const double x = (col + (gx + 0.5) / grid_cols) * room_w;
            const double y = (row + (gy + 0.5) / grid_rows) * room_d;
            points.push_back(RoomPoint{id, x, y});
        }
    }
    return points;
}

std::vector<GeoPosition> perimeter_points(const sim::BuildingModel& b, std::uint32_t count, double standoff_m) {
    const double w = b.width_m + 2.0 * standoff_m;
    const double d = b.depth_m + 2.0 * standoff_m;
    const double perimeter = 2.0 * (w + d);
    std::vector<GeoPosition> points;
    for (std::uint32_t i = 0; i < count; ++i) {
        double s = (i + 0.5) * perimeter / count;
        double x = 0.0, y = 0.0;
        if (s < w) {
            x = s;
        } else if ((s -= w) < d) {
            x = w;
            y = s;
        } else if ((s -= d) < w) {
            x = w - s;
            y = d;
        } else {
            y = d - (s - w);
        }
        auto p = sim::offset_position(b.anchor, x - standoff_m, y - standoff_m);
        p.altitude = b.anchor.altitude + 1.5;
        points.push_back(p);
    }
    return points;
}

campaign::Campaign run_survey(sim::SimModem& modem, Clock& clock, const SurveyOptions& o) {
    const auto& b = modem.scenario().building(o.building_id);
    campaign::Campaign camp(o.building_id + "-survey", o.building_id);

    for (const auto& p : perimeter_points(b, o.outdoor_positions, o.outdoor_standoff_m)) {
        modem.move_to(p);
        campaign::measure_outdoor(camp, o.settings, modem, clock);
    }

    std::vector<int> floors = o.floors;
    if (floors.empty())
        for (int f = b.min_floor; f <= b.max_floor; ++f) floors.push_back(f);

    const auto width_px = static_cast<std::uint32_t>(std::lround(b.width_m * o.pixels_per_m));
    const auto height_px = static_cast<std::uint32_t>(std::lround(b.depth_m * o.pixels_per_m));
    const auto png = campaign::blank_png(width_px, height_px);

    for (int floor : floors) {
        const auto id = plan_id(b.id, floor);
        campaign::upload_plan(camp, png, id + ".png");
        const auto it = o.rooms_on_floor.find(floor);
        const int rooms = it != o.rooms_on_floor.end() ? it->second : o.rooms_per_floor;
        for (const auto& pt : room_points(b, rooms, o.points_per_room, floor)) {
            modem.move_to(sim::IndoorLocation{b.id, floor, pt.x_m, pt.y_m});
            const PlanPosition click{id, pt.x_m * o.pixels_per_m, (b.depth_m - pt.y_m) * o.pixels_per_m};
            campaign::measure_indoor(camp, o.settings, modem, clock, click, IndoorMeta{pt.room_id, floor, false});
        }
    }
    return camp;
}

}  // namespace ltem::survey
