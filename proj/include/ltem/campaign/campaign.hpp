#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ltem/core/error.hpp"
#include "ltem/core/types.hpp"

namespace ltem::campaign {

enum class CampaignErrc {
    unknown_plan,
    out_of_bounds,
    undecodable_image,
    duplicate_plan_id,
    invalid_record,
};

using CampaignError = CodedError<CampaignErrc>;

inline constexpr std::chrono::milliseconds kDefaultDrxCycle{2560};

struct MeasurementSettings {
    std::uint32_t gnss_fix_count = 3;
    std::uint32_t samples_per_position = 5;
    std::chrono::milliseconds interval{3000};
    std::chrono::milliseconds drx_cycle = kDefaultDrxCycle;  // configured, not probed
};

/// Raised when settings break an invariant; `invariant` names it.
class SettingsError : public std::invalid_argument {
public:
    SettingsError(std::string invariant, const std::string& what)
        : std::invalid_argument(what), invariant(std::move(invariant)) {}

    std::string invariant;
};

/// Checks counts >= 1 and interval > drx_cycle.
void validate(const MeasurementSettings& settings);

struct FloorPlan {
    std::string id;  // file stem of the uploaded image
    std::string filename;
    std::string content_type;
    std::vector<std::uint8_t> image;
    std::uint32_t width = 0;
    std::uint32_t height = 0;

    bool contains(double x, double y) const noexcept {
        return x >= 0.0 && y >= 0.0 && x < static_cast<double>(width) && y < static_cast<double>(height);
    }
};

/// A campaign is an append-only record log plus its floor plans. Position ids
/// increase monotonically and every position is committed in one step.
class Campaign {
public:
    explicit Campaign(std::string id = "campaign", std::string building_label = {})
        : id_(std::move(id)), building_label_(std::move(building_label)) {}

    const std::string& id() const noexcept { return id_; }
    const std::string& building_label() const noexcept { return building_label_; }
    const std::vector<MeasurementRecord>& records() const noexcept { return records_; }
    const std::map<std::string, FloorPlan, std::less<>>& plans() const noexcept { return plans_; }
    std::uint32_t next_position_id() const noexcept { return next_position_id_; }

    const FloorPlan& plan(std::string_view id) const;
    const FloorPlan& add_plan(FloorPlan plan);

    /// Assigns the next position id X and appends samples as X.1 .. X.k.
    std::vector<MeasurementRecord> commit_position(const Position& position, const std::optional<IndoorMeta>& meta,
                                                   const std::vector<SignalSample>& samples);

    /// Re-adds previously persisted records with their original ids.
    void restore(std::vector<MeasurementRecord> records);

    std::optional<MeasurementRecord> find(MeasurementId id) const;

private:
    std::string id_;
    std::string building_label_;
    std::vector<MeasurementRecord> records_;
    std::map<std::string, FloorPlan, std::less<>> plans_;
    std::uint32_t next_position_id_ = 1;
};

/// Shared campaign with snapshot isolation: readers get an immutable snapshot,
/// writers publish a new version atomically.
class CampaignStore {
public:
    explicit CampaignStore(Campaign initial = Campaign{})
        : current_(std::make_shared<const Campaign>(std::move(initial))) {}

    std::shared_ptr<const Campaign> snapshot() const {
        std::shared_lock lock(mutex_);
        return current_;
    }

    /// Applies fn to a copy and publishes it; returns fn's result.
    template <class Fn>
    auto update(Fn&& fn) {
        std::lock_guard writer(write_mutex_);
        auto next = std::make_shared<Campaign>(*snapshot());
        if constexpr (std::is_void_v<decltype(fn(*next))>) {
            fn(*next);
            publish(std::move(next));
        } else {
            auto result = fn(*next);
            publish(std::move(next));
            return result;
        }
    }

private:
    void publish(std::shared_ptr<Campaign> next) {
        std::unique_lock lock(mutex_);
        current_ = std::move(next);
    }

    mutable std::shared_mutex mutex_;
    std::mutex write_mutex_;
    std::shared_ptr<const Campaign> current_;
};

}  // namespace ltem::campaign
