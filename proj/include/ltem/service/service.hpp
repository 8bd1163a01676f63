#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>

#include "ltem/campaign/campaign.hpp"
#include "ltem/core/clock.hpp"
#include "ltem/core/color_scale.hpp"
#include "ltem/modem/backend.hpp"
#include "ltem/service/queue.hpp"
#include "ltem/sim/sim_modem.hpp"

namespace httplib {
class Server;
}

namespace ltem::service {

struct ServiceOptions {
    campaign::MeasurementSettings defaults;
    std::optional<std::filesystem::path> campaign_dir;  // saved after every write
    std::optional<std::filesystem::path> static_dir;    // mounted at "/"
    ColorScale scale;
    std::size_t queue_depth = 1;
};

/// HTTP API under /api/v1.
///
///   GET  status
///   POST measurements/outdoor           {settings?}
///   POST measurements/indoor            {plan, x, y, room, floor, outdoor_flag?, settings?}
///   POST plans?name=<file>              raw PNG/JPEG body
///   GET  plans, plans/{id}, plans/{id}/image
///   GET  records?building=&floor=&room=&bin=&kind=, records/{X.Y}
///   GET  analysis[?format=text], scatter3d
///   GET  export/outdoor.csv, export/indoor.csv
///   GET|PUT sim/location                (simulator backend only)
///
/// Errors are {"error": <code>, "message": ...}. Measurements are serialized
/// through a FIFO queue in front of the backend; readers see snapshots.
class Service {
public:
    Service(campaign::Campaign initial, std::shared_ptr<modem::ModemBackend> backend, Clock& clock,
            ServiceOptions options = {});

    /// Enables the sim endpoints and maps plan clicks onto the simulated building.
    void attach_simulator(std::shared_ptr<sim::SimModem> simulator);

    void install(httplib::Server& server);

    campaign::CampaignStore& store() noexcept { return store_; }
    BackendQueue& queue() noexcept { return queue_; }
    const ServiceOptions& options() const noexcept { return options_; }

    /// Plan pixel to footprint metres of the simulated building, north up:
    /// x spans width_m, image top is the north wall.
    sim::IndoorLocation plan_to_building(const campaign::FloorPlan& plan, const PlanPosition& click, int floor) const;

private:
    void persist(const campaign::Campaign& snapshot);
    const sim::BuildingModel& sim_building() const;

    campaign::CampaignStore store_;
    std::shared_ptr<modem::ModemBackend> backend_;
    std::shared_ptr<sim::SimModem> simulator_;
    Clock& clock_;
    ServiceOptions options_;
    BackendQueue queue_;
    std::mutex persist_mutex_;
};

}  // namespace ltem::service
