#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ltem::campaign {

struct ImageInfo {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::string content_type;  // image/png or image/jpeg
};

/// Fully decodes a PNG or JPEG to prove it is usable as a plan.
/// Throws CampaignError(undecodable_image) otherwise.
ImageInfo decode_image(std::span<const std::uint8_t> bytes);

/// White RGB PNG of the given size.
std::vector<std::uint8_t> blank_png(std::uint32_t width, std::uint32_t height);

/// "plans/eg-floor1.png" -> "eg-floor1".
std::string plan_id_from_name(std::string_view name);

}  // namespace ltem::campaign
