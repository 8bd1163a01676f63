#pragma once

#include <string>
#include <vector>

#include "ltem/core/types.hpp"

namespace ltem {

struct Violation {
    std::string field;
    std::string message;
};

struct ValidationResult {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    explicit operator bool() const noexcept { return ok(); }
    std::string describe() const;
};

ValidationResult validate_sample(const SignalSample& sample);

ValidationResult validate_position(const GeoPosition& position);

/// Sample ranges plus the geo/plan vs. meta pairing rule.
ValidationResult validate_record(const MeasurementRecord& record);

}  // namespace ltem
