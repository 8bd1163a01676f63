#include "ltem/sim/rng.hpp"

#include <cmath>
#include <numbers>

namespace ltem::sim {

double CounterRng::uniform(std::uint64_t counter, std::uint32_t lane) const noexcept {
    const auto top = bits(counter, lane) >> 11;
    return (static_cast<double>(top) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t counter, std::uint32_t pair) const noexcept {
    const double u1 = uniform(counter, 2 * pair);
    const double u2 = uniform(counter, 2 * pair + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace ltem::sim
