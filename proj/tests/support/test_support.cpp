#include "test_support.hpp"

#include <atomic>
#include <chrono>
#include <unistd.h>

#include "ltem/sim/propagation.hpp"

namespace ltem::testing {

modem::AtResponse ScriptedBackend::query_serving_cell() {
    ++cell_queries;
    if (on_query) on_query();
    if (cell_responses.empty()) return modem::AtResponse{{}, modem::AtStatus::timeout};
    auto r = cell_responses.front();
    cell_responses.pop_front();
    return r;
}

std::string ScriptedBackend::query_gga() {
    ++gga_queries;
    if (gga_sentences.empty()) return {};
    auto s = gga_sentences.front();
    gga_sentences.pop_front();
    return s;
}

modem::AtResponse cell_ok(std::optional<double> rsrp) {
    SignalSample s;
    s.rsrp = rsrp;
    const double level = rsrp.value_or(-140.0);
    s.rsrq = -15;
    s.rssi = level + 26;
    s.sinr = std::max(-23.0, std::min(40.0, level + 130));
    const modem::CellInfo cell;
    s.tac = cell.tac;
    s.cid = cell.cid;
    return modem::render_serving_cell(s, cell);
}

std::string gga_at(double lat, double lon, double alt) {
    return modem::render_gga(GeoPosition{lat, lon, alt}, std::chrono::milliseconds{12 * 3600 * 1000});
}

std::string gga_no_fix() { return modem::render_gga(std::nullopt, std::chrono::milliseconds{0}); }

namespace {

SignalSample sample(std::optional<double> rsrp, std::uint32_t x, std::uint32_t y) {
    SignalSample s;
    s.rsrp = rsrp;
    s.rsrq = -15;
    s.rssi = rsrp.value_or(-140) + 26;
    s.sinr = std::max(-23.0, std::min(40.0, rsrp.value_or(-140) + 130));
    s.tac = 0x2E1;
    s.cid = 0x1A2B;
    s.utc = UtcTime{std::chrono::milliseconds{1'715'680'800'000LL + 60'000LL * x + 3'000LL * y}};
    return s;
}

}  // namespace

MeasurementRecord outdoor_record(std::uint32_t x, std::uint32_t y, std::optional<double> rsrp) {
    return MeasurementRecord{{x, y}, GeoPosition{50.7 + 0.0001 * x, 7.1, 170.0}, std::nullopt, sample(rsrp, x, y)};
}

MeasurementRecord indoor_record(std::uint32_t x, std::uint32_t y, std::optional<double> rsrp, int floor,
                                std::string room, std::string map, double px, double py) {
    return MeasurementRecord{{x, y}, PlanPosition{std::move(map), px, py}, IndoorMeta{std::move(room), floor, false},
                             sample(rsrp, x, y)};
}

sim::Scenario quiet_scenario(double sigma_pl, double sigma_b) {
    auto s = sim::default_scenario();
    s.sigma_pl_db = sigma_pl;
    for (auto& b : s.buildings) b.sigma_b_db = sigma_b;
    return s;
}

TempDir::TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("ltem-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

}  // namespace ltem::testing
