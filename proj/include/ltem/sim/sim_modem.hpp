#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ltem/core/clock.hpp"
#include "ltem/modem/backend.hpp"
#include "ltem/sim/propagation.hpp"
#include "ltem/sim/scenario.hpp"

namespace ltem::sim {

/// Modem backend that answers from the propagation model at a commanded
/// location. Each serving-cell query consumes the next draw of the scenario's
/// propagation stream; GNSS fixes come from a separate stream and are only
/// available outdoors.
class SimModem final : public modem::ModemBackend {
public:
    explicit SimModem(Scenario scenario, Clock* clock = nullptr,
                      modem::Capabilities caps = modem::Capabilities{true, true});

    void move_to(SimLocation location);
    const std::optional<SimLocation>& location() const noexcept { return location_; }

    modem::Capabilities capabilities() const override { return caps_; }
    modem::AtResponse query_serving_cell() override;
    std::string query_gga() override;
    std::string describe() const override { return "simulated modem"; }

    const Scenario& scenario() const noexcept { return scenario_; }
    const std::optional<PropagationDraw>& last_draw() const noexcept { return last_draw_; }
    std::uint64_t draw_count() const noexcept { return draws_; }

private:
    Scenario scenario_;
    Clock* clock_;
    modem::Capabilities caps_;
    std::optional<SimLocation> location_;
    std::optional<PropagationDraw> last_draw_;
    std::uint64_t draws_ = 0;
    std::uint64_t fixes_ = 0;
};

}  // namespace ltem::sim
