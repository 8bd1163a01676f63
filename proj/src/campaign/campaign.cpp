#include "ltem/campaign/campaign.hpp"

#include <algorithm>
#include <set>

#include "ltem/core/validation.hpp"

namespace ltem::campaign {

void validate(const MeasurementSettings& s) {
    if (s.gnss_fix_count < 1) throw SettingsError("gnss_fix_count_positive", "gnss_fix_count must be at least 1");
    if (s.samples_per_position < 1)
        throw SettingsError("samples_per_position_positive", "samples_per_position must be at least 1");
    if (s.interval <= s.drx_cycle)
        throw SettingsError("interval_exceeds_drx_cycle",
                            "interval " + std::to_string(s.interval.count()) + " ms must exceed the DRX cycle of " +
                                std::to_string(s.drx_cycle.count()) + " ms");
}

const FloorPlan& Campaign::plan(std::string_view id) const {
    const auto it = plans_.find(id);
    if (it == plans_.end()) throw CampaignError(CampaignErrc::unknown_plan, "unknown plan '" + std::string(id) + "'");
    return it->second;
}

const FloorPlan& Campaign::add_plan(FloorPlan plan) {
    if (plans_.contains(plan.id))
        throw CampaignError(CampaignErrc::duplicate_plan_id, "plan '" + plan.id + "' already exists");
    auto id = plan.id;
    return plans_.emplace(std::move(id), std::move(plan)).first->second;
}

std::vector<MeasurementRecord> Campaign::commit_position(const Position& position,
                                                         const std::optional<IndoorMeta>& meta,
                                                         const std::vector<SignalSample>& samples) {
    std::vector<MeasurementRecord> added;
    added.reserve(samples.size());
    std::uint32_t y = 1;
    for (const auto& sample : samples) {
        MeasurementRecord record{{next_position_id_, y++}, position, meta, sample};
        if (const auto check = validate_record(record); !check)
            throw CampaignError(CampaignErrc::invalid_record, "rejected record: " + check.describe());
        added.push_back(std::move(record));
    }
    if (added.empty()) return added;
    records_.insert(records_.end(), added.begin(), added.end());
    ++next_position_id_;
    return added;
}

void Campaign::restore(std::vector<MeasurementRecord> records) {
    std::set<MeasurementId> seen;
    for (const auto& r : records_) seen.insert(r.id);
    for (const auto& r : records) {
        if (r.id.position_id < next_position_id_ && !records_.empty())
            throw CampaignError(CampaignErrc::invalid_record, "restored id " + render_id(r.id) + " is not new");
        if (!seen.insert(r.id).second)
            throw CampaignError(CampaignErrc::invalid_record, "duplicate measurement id " + render_id(r.id));
        if (const auto check = validate_record(r); !check)
            throw CampaignError(CampaignErrc::invalid_record, render_id(r.id) + ": " + check.describe());
    }
    std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (auto& r : records) {
        next_position_id_ = std::max(next_position_id_, r.id.position_id + 1);
        records_.push_back(std::move(r));
    }
}

std::optional<MeasurementRecord> Campaign::find(MeasurementId id) const {
    const auto it = std::find_if(records_.begin(), records_.end(), [&](const auto& r) { return r.id == id; });
    if (it == records_.end()) return std::nullopt;
    return *it;
}

}  // namespace ltem::campaign
