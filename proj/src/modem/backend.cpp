#include "ltem/modem/backend.hpp"

#include "ltem/core/validation.hpp"

namespace ltem::modem {

SignalSample read_signal(ModemBackend& backend, Clock& clock) {
    if (!backend.capabilities().signal_readout)
        throw ModemError(ModemErrc::capability_missing, backend.describe() + " cannot read signal indicators");

    const auto response = backend.query_serving_cell();
    switch (response.status) {
        case AtStatus::timeout:
            throw ModemError(ModemErrc::timeout, "serving-cell query timed out on " + backend.describe());
        case AtStatus::error:
            throw ModemError(ModemErrc::error_status, "modem answered ERROR to serving-cell query");
        case AtStatus::ok: break;
    }

    auto sample = parse_serving_cell(response, clock.now());
    if (const auto check = validate_sample(sample); !check)
        throw ModemError(ModemErrc::invalid_sample, "modem reported out-of-range values: " + check.describe());
    return sample;
}

GeoPosition read_fix_average(ModemBackend& backend, std::size_t count) {
    if (count == 0) throw std::invalid_argument("fix count must be at least 1");
    if (!backend.capabilities().gnss)
        throw ModemError(ModemErrc::capability_missing, backend.describe() + " has no GNSS receiver");

    const std::size_t budget = fix_retry_budget(count);
    std::size_t failures = 0;
    std::size_t valid = 0;
    double lat = 0.0, lon = 0.0, alt = 0.0;
    while (valid < count) {
        try {
            const auto fix = parse_gga(backend.query_gga());
            lat += fix.position->latitude;
            lon += fix.position->longitude;
            alt += fix.position->altitude;
            ++valid;
        } catch (const ProtocolError& e) {
            if (++failures > budget)
                throw ModemError(ModemErrc::insufficient_fixes,
                                 "only " + std::to_string(valid) + " of " + std::to_string(count) +
                                     " GNSS fixes after " + std::to_string(budget) + " retries (last: " + e.what() +
                                     ")");
        }
    }
    const double n = static_cast<double>(count);
    return GeoPosition{lat / n, lon / n, alt / n};
}

}  // namespace ltem::modem
