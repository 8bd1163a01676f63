#pragma once

#include <cstdint>

namespace ltem::sim {

/// SplitMix64 output function (Steele, Lea, Flood).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Counter-based random source: every value is a pure function of
/// (seed, stream, counter, lane), so results do not depend on call order,
/// platform or standard library. Uniforms take the top 53 bits of a
/// SplitMix64 hash; normals use the cosine branch of Box-Muller over lanes
/// (2k, 2k+1).
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_(splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ULL))) {}

    std::uint64_t bits(std::uint64_t counter, std::uint32_t lane) const noexcept {
        return splitmix64(key_ ^ splitmix64(counter * 16 + lane));
    }

    /// Uniform in the open interval (0, 1).
    double uniform(std::uint64_t counter, std::uint32_t lane) const noexcept;

    /// Standard normal from lanes 2*pair and 2*pair+1.
    double normal(std::uint64_t counter, std::uint32_t pair) const noexcept;

private:
    std::uint64_t key_;
};

}  // namespace ltem::sim
