#pragma once

#include <optional>
#include <string_view>

namespace ltem {

enum class ColorBin { good, fair, poor, bad, none };

std::string_view to_string(ColorBin bin);
std::optional<ColorBin> color_bin_from_string(std::string_view text);

/// Maps RSRP to display bins: >= good_min "good", [fair_min, good_min) "fair",
/// [poor_min, fair_min) "poor", below "bad", censored "none".
struct ColorScale {
    double good_min = -95.0;
    double fair_min = -105.0;
    double poor_min = -120.0;

    ColorBin classify(std::optional<double> rsrp) const noexcept;
};

}  // namespace ltem
