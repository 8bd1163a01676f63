#pragma once

#include <chrono>
#include <cstddef>
#include <string>

#include "ltem/core/clock.hpp"
#include "ltem/core/error.hpp"
#include "ltem/core/types.hpp"
#include "ltem/modem/protocol.hpp"

namespace ltem::modem {

enum class ModemErrc {
    capability_missing,
    timeout,
    error_status,
    invalid_sample,
    insufficient_fixes,
    io,
};

using ModemError = CodedError<ModemErrc>;

struct Capabilities {
    bool signal_readout = false;
    bool gnss = false;
};

inline constexpr std::chrono::milliseconds kDefaultAtTimeout{5000};

/// Source of serving-cell responses and GGA sentences. Real serial hardware and
/// the simulator both implement this. Instances are single-owner: callers must
/// serialize access.
class ModemBackend {
public:
    virtual ~ModemBackend() = default;

    virtual Capabilities capabilities() const = 0;

    /// One serving-cell query exchange. Status timeout/error is reported in the
    /// response, transport failures throw ModemError.
    virtual AtResponse query_serving_cell() = 0;

    /// One raw GGA sentence (may describe "no fix").
    virtual std::string query_gga() = 0;

    virtual std::string describe() const = 0;
};

/// Queries, parses and validates one serving-cell sample, stamped with clock.now().
SignalSample read_signal(ModemBackend& backend, Clock& clock);

/// Arithmetic mean of `count` valid fixes. Invalid fixes (no fix, checksum or
/// format errors) are re-requested; at most 3 * count of them are tolerated.
GeoPosition read_fix_average(ModemBackend& backend, std::size_t count);

inline std::size_t fix_retry_budget(std::size_t count) { return 3 * count; }

}  // namespace ltem::modem
