#include "ltem/core/validation.hpp"

#include <cmath>

#include "ltem/core/text.hpp"

namespace ltem {

std::string ValidationResult::describe() const {
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += "; ";
        out += v.message;
    }
    return out;
}

namespace {

void check_range(ValidationResult& result, const char* field, double value, double lo, double hi) {
    if (!std::isfinite(value)) {
        result.violations.push_back({field, std::string(field) + " is not finite"});
    } else if (value < lo) {
        result.violations.push_back({field, std::string(field) + " below " + text::format_number(lo)});
    } else if (value > hi) {
        result.violations.push_back({field, std::string(field) + " above " + text::format_number(hi)});
    }
}

}  // namespace

ValidationResult validate_sample(const SignalSample& s) {
    ValidationResult result;
    if (s.rsrp) check_range(result, "rsrp", *s.rsrp, kSensitivityFloorDbm, kRsrpMaxDbm);
    check_range(result, "rsrq", s.rsrq, kRsrqMinDb, kRsrqMaxDb);
    check_range(result, "sinr", s.sinr, kSinrMinDb, kSinrMaxDb);
    if (!std::isfinite(s.rssi)) result.violations.push_back({"rssi", "rssi is not finite"});
    return result;
}

ValidationResult validate_position(const GeoPosition& p) {
    ValidationResult result;
    check_range(result, "latitude", p.latitude, -90.0, 90.0);
    check_range(result, "longitude", p.longitude, -180.0, 180.0);
    if (!std::isfinite(p.altitude)) result.violations.push_back({"altitude", "altitude is not finite"});
    return result;
}

ValidationResult validate_record(const MeasurementRecord& record) {
    ValidationResult result = validate_sample(record.sample);
    if (record.id.sample_id == 0) result.violations.push_back({"id", "sample id must start at 1"});
    if (!well_formed(record))
        result.violations.push_back({"meta", "plan positions need indoor metadata, geo positions must not have it"});
    if (const auto* geo = std::get_if<GeoPosition>(&record.position)) {
        auto pos = validate_position(*geo);
        result.violations.insert(result.violations.end(), pos.violations.begin(), pos.violations.end());
    } else {
        const auto& plan = std::get<PlanPosition>(record.position);
        if (!(plan.x >= 0.0) || !(plan.y >= 0.0) || !std::isfinite(plan.x) || !std::isfinite(plan.y))
            result.violations.push_back({"xy", "plan coordinates must be finite and non-negative"});
    }
    return result;
}

}  // namespace ltem
