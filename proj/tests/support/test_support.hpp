#pragma once

#include <deque>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ltem/campaign/campaign.hpp"
#include "ltem/modem/backend.hpp"
#include "ltem/modem/protocol.hpp"
#include "ltem/sim/scenario.hpp"

namespace ltem::testing {

/// Backend that replays queued responses. Empty queues yield a timeout
/// status (serving cell) or an empty sentence (GGA).
class ScriptedBackend final : public modem::ModemBackend {
public:
    explicit ScriptedBackend(modem::Capabilities caps = {true, true}) : caps_(caps) {}

    std::deque<modem::AtResponse> cell_responses;
    std::deque<std::string> gga_sentences;
    std::function<void()> on_query;  // runs before every serving-cell query

    modem::Capabilities capabilities() const override { return caps_; }
    modem::AtResponse query_serving_cell() override;
    std::string query_gga() override;
    std::string describe() const override { return "scripted modem"; }

    std::size_t cell_queries = 0;
    std::size_t gga_queries = 0;

private:
    modem::Capabilities caps_;
};

modem::AtResponse cell_ok(std::optional<double> rsrp);
std::string gga_at(double lat, double lon, double alt);
std::string gga_no_fix();

MeasurementRecord outdoor_record(std::uint32_t x, std::uint32_t y, std::optional<double> rsrp);
MeasurementRecord indoor_record(std::uint32_t x, std::uint32_t y, std::optional<double> rsrp, int floor,
                                std::string room = "r1", std::string map = "plan", double px = 10, double py = 10);

/// Scenario with a single building directly north of the base station.
sim::Scenario quiet_scenario(double sigma_pl, double sigma_b);

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace ltem::testing
