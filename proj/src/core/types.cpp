#include "ltem/core/types.hpp"

#include <stdexcept>

#include "ltem/core/text.hpp"

namespace ltem {

std::string render_id(MeasurementId id) {
    return std::to_string(id.position_id) + "." + std::to_string(id.sample_id);
}

MeasurementId parse_id(std::string_view text) {
    const auto dot = text.find('.');
    if (dot == std::string_view::npos || dot == 0 || dot + 1 == text.size())
        throw std::invalid_argument("measurement id must look like X.Y: '" + std::string(text) + "'");

    auto component = [&](std::string_view part) -> std::uint32_t {
        for (char c : part)
            if (c < '0' || c > '9')
                throw std::invalid_argument("measurement id must look like X.Y: '" + std::string(text) + "'");
        const auto value = text::parse_int(part);
        if (!value || *value > 0xFFFFFFFFLL)
            throw std::invalid_argument("measurement id component out of range: '" + std::string(text) + "'");
        return static_cast<std::uint32_t>(*value);
    };

    MeasurementId id{component(text.substr(0, dot)), component(text.substr(dot + 1))};
    if (id.sample_id == 0) throw std::invalid_argument("sample ids start at 1: '" + std::string(text) + "'");
    return id;
}

bool well_formed(const MeasurementRecord& record) noexcept {
    return record.is_plan() == record.meta.has_value();
}

}  // namespace ltem
