#include "ltem/campaign/measure.hpp"

#include "ltem/campaign/image.hpp"

namespace ltem::campaign {

std::vector<SignalSample> sample_series(const MeasurementSettings& settings, modem::ModemBackend& backend,
                                        Clock& clock) {
    validate(settings);
    std::vector<SignalSample> samples;
    samples.reserve(settings.samples_per_position);
    for (std::uint32_t k = 0; k < settings.samples_per_position; ++k) {
        if (k > 0) clock.sleep_for(settings.interval);
        samples.push_back(modem::read_signal(backend, clock));
    }
    return samples;
}

PendingPosition collect_outdoor(const MeasurementSettings& settings, modem::ModemBackend& backend, Clock& clock) {
    validate(settings);
    PendingPosition pending;
    pending.position = modem::read_fix_average(backend, settings.gnss_fix_count);
    pending.samples = sample_series(settings, backend, clock);
    return pending;
}

PendingPosition collect_indoor(const Campaign& campaign, const MeasurementSettings& settings,
                               modem::ModemBackend& backend, Clock& clock, const PlanPosition& click,
                               const IndoorMeta& meta) {
    validate(settings);
    const auto& plan = campaign.plan(click.map_id);
    if (!plan.contains(click.x, click.y))
        throw CampaignError(CampaignErrc::out_of_bounds, "click (" + std::to_string(click.x) + ", " +
                                                             std::to_string(click.y) + ") is outside plan '" +
                                                             plan.id + "' (" + std::to_string(plan.width) + "x" +
                                                             std::to_string(plan.height) + ")");
    PendingPosition pending;
    pending.position = click;
    pending.meta = meta;
    pending.samples = sample_series(settings, backend, clock);
    return pending;
}

std::vector<MeasurementRecord> measure_outdoor(Campaign& campaign, const MeasurementSettings& settings,
                                               modem::ModemBackend& backend, Clock& clock) {
    auto pending = collect_outdoor(settings, backend, clock);
    return campaign.commit_position(pending.position, pending.meta, pending.samples);
}

std::vector<MeasurementRecord> measure_indoor(Campaign& campaign, const MeasurementSettings& settings,
                                              modem::ModemBackend& backend, Clock& clock, const PlanPosition& click,
                                              const IndoorMeta& meta) {
    auto pending = collect_indoor(campaign, settings, backend, clock, click, meta);
    return campaign.commit_position(pending.position, pending.meta, pending.samples);
}

const FloorPlan& upload_plan(Campaign& campaign, std::span<const std::uint8_t> image, std::string_view name) {
    FloorPlan plan;
    plan.id = plan_id_from_name(name);
    if (plan.id.empty()) throw CampaignError(CampaignErrc::undecodable_image, "plan needs a file name");
    if (campaign.plans().contains(plan.id))
        throw CampaignError(CampaignErrc::duplicate_plan_id, "plan '" + plan.id + "' already exists");
    const auto info = decode_image(image);
    const auto slash = name.find_last_of("/\\");
    plan.filename = std::string(slash == std::string_view::npos ? name : name.substr(slash + 1));
    plan.content_type = info.content_type;
    plan.width = info.width;
    plan.height = info.height;
    plan.image.assign(image.begin(), image.end());
    return campaign.add_plan(std::move(plan));
}

}  // namespace ltem::campaign
