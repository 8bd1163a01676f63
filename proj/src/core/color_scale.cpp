#include "ltem/core/color_scale.hpp"

namespace ltem {

std::string_view to_string(ColorBin bin) {
    switch (bin) {
        case ColorBin::good: return "good";
        case ColorBin::fair: return "fair";
        case ColorBin::poor: return "poor";
        case ColorBin::bad: return "bad";
        case ColorBin::none: return "none";
    }
    return "none";
}

std::optional<ColorBin> color_bin_from_string(std::string_view text) {
    for (auto bin : {ColorBin::good, ColorBin::fair, ColorBin::poor, ColorBin::bad, ColorBin::none})
        if (to_string(bin) == text) return bin;
    return std::nullopt;
}

ColorBin ColorScale::classify(std::optional<double> rsrp) const noexcept {
    if (!rsrp) return ColorBin::none;
    if (*rsrp >= good_min) return ColorBin::good;
    if (*rsrp >= fair_min) return ColorBin::fair;
    if (*rsrp >= poor_min) return ColorBin::poor;
    return ColorBin::bad;
}

}  // namespace ltem
