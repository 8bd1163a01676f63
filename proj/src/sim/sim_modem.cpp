#include "ltem/sim/sim_modem.hpp"

#include "ltem/sim/rng.hpp"

namespace ltem::sim {

namespace {

constexpr std::uint64_t kGnssStream = 2;

}  // namespace

SimModem::SimModem(Scenario scenario, Clock* clock, modem::Capabilities caps)
    : scenario_(std::move(scenario)), clock_(clock), caps_(caps) {
    validate(scenario_);
}

void SimModem::move_to(SimLocation location) {
    if (const auto* indoor = std::get_if<IndoorLocation>(&location)) {
        const auto& b = scenario_.building(indoor->building_id);
        if (indoor->floor < b.min_floor || indoor->floor > b.max_floor)
            throw SimError(SimErrc::floor_out_of_range, "floor " + std::to_string(indoor->floor) +
                                                            " outside building '" + b.id + "'");
    }
    location_ = std::move(location);
}

modem::AtResponse SimModem::query_serving_cell() {
    if (!location_) return {{"+CME ERROR: 30"}, modem::AtStatus::error};
    try {
        last_draw_ = draw_sample(scenario_, *location_, draws_++);
    } catch (const SimError&) {
        // no service closer than the reference distance
        return {{"+CME ERROR: 30"}, modem::AtStatus::error};
    }
    return render_wire(*last_draw_, scenario_.cell);
}

std::string SimModem::query_gga() {
    const auto now = clock_ ? clock_->now() : UtcTime{};
    const auto tod = now - std::chrono::floor<std::chrono::days>(now);
    if (!location_ || std::holds_alternative<IndoorLocation>(*location_))
        return modem::render_gga(std::nullopt, tod, modem::FixQuality::none);

    const CounterRng rng(scenario_.seed, kGnssStream);
    const auto counter = fixes_++;
    const double sigma = scenario_.gnss_sigma_m;
    auto fix = offset_position(std::get<GeoPosition>(*location_), sigma * rng.normal(counter, 0),
                               sigma * rng.normal(counter, 1));
    fix.altitude += 1.5 * sigma * rng.normal(counter, 2);
    return modem::render_gga(fix, tod);
}

}  // namespace ltem::sim
