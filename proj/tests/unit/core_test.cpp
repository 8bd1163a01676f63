#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ltem/core/clock.hpp"
#include "ltem/core/color_scale.hpp"
#include "ltem/core/text.hpp"
#include "ltem/core/types.hpp"
#include "ltem/core/units.hpp"
#include "ltem/core/validation.hpp"

using namespace ltem;

TEST(MeasurementId, RendersPositionDotSample) {
    EXPECT_EQ(render_id({3, 2}), "3.2");
    EXPECT_EQ(render_id({1, 1}), "1.1");
}

TEST(MeasurementId, ParseRenderRoundTrip) {
    const auto id = parse_id("17.5");
    EXPECT_EQ(id.position_id, 17u);
    EXPECT_EQ(id.sample_id, 5u);
    EXPECT_EQ(render_id(id), "17.5");

    std::mt19937 rng(7);
    std::uniform_int_distribution<std::uint32_t> dist(1, 4'000'000'000u);
    for (int i = 0; i < 2000; ++i) {
        const MeasurementId original{dist(rng), dist(rng)};
        EXPECT_EQ(parse_id(render_id(original)), original);
    }
}

TEST(MeasurementId, RejectsMalformedText) {
    for (const char* bad : {"", "3", "3.", ".2", "3.0", "a.b", "3.2.1", "-1.2", "3.2 ", "99999999999.1"})
        EXPECT_THROW(parse_id(bad), std::invalid_argument) << bad;
}

TEST(MeasurementId, OrdersByPositionThenSample) {
    EXPECT_LT((MeasurementId{1, 9}), (MeasurementId{2, 1}));
    EXPECT_LT((MeasurementId{2, 1}), (MeasurementId{2, 2}));
}

TEST(SignalValidation, AcceptsTypicalSample) {
    SignalSample s;
    s.rsrp = -121;
    s.rsrq = -15;
    s.rssi = -95;
    s.sinr = 9;
    EXPECT_TRUE(validate_sample(s).ok());
}

TEST(SignalValidation, RejectsNumericRsrpBelowSensitivity) {
    SignalSample s;
    s.rsrp = -150;
    s.rsrq = -15;
    s.rssi = -95;
    s.sinr = 9;
    const auto result = validate_sample(s);
    ASSERT_FALSE(result.ok());
    EXPECT_EQ(result.violations.front().field, "rsrp");
    EXPECT_EQ(result.violations.front().message, "rsrp below -140");
}

TEST(SignalValidation, CensoredIsLegal) {
    SignalSample s;
    s.rsrq = -15;
    s.rssi = -114;
    s.sinr = -10;
    EXPECT_TRUE(s.censored());
    EXPECT_TRUE(validate_sample(s).ok());
}

TEST(SignalValidation, FlagsOtherIndicatorsOutOfRange) {
    SignalSample s;
    s.rsrp = -100;
    s.rsrq = -40;
    s.sinr = 50;
    const auto result = validate_sample(s);
    EXPECT_EQ(result.violations.size(), 2u);
}

TEST(RecordValidation, GeoCarriesNoMetaAndPlanAlwaysDoes) {
    SignalSample s;
    s.rsrp = -100;
    s.rsrq = -15;
    MeasurementRecord geo{{1, 1}, GeoPosition{50.7, 7.1, 100}, std::nullopt, s};
    EXPECT_TRUE(well_formed(geo));
    EXPECT_TRUE(validate_record(geo).ok());
    geo.meta = IndoorMeta{"r", 0, false};
    EXPECT_FALSE(well_formed(geo));
    EXPECT_FALSE(validate_record(geo).ok());

    MeasurementRecord plan{{1, 1}, PlanPosition{"p", 1, 2}, std::nullopt, s};
    EXPECT_FALSE(well_formed(plan));
    plan.meta = IndoorMeta{"r", 0, false};
    EXPECT_TRUE(validate_record(plan).ok());
}

TEST(PositionValidation, RejectsCoordinatesOutsideWgs84) {
    EXPECT_TRUE(validate_position({50.7, 7.1, 100}).ok());
    EXPECT_FALSE(validate_position({91, 7.1, 100}).ok());
    EXPECT_FALSE(validate_position({50, -181, 100}).ok());
}

TEST(Units, DbmToMilliwatt) {
    EXPECT_DOUBLE_EQ(dbm_to_mw(0.0), 1.0);
    EXPECT_NEAR(dbm_to_mw(-30.0), 0.001, 1e-18);
    // 10^(-9.83) evaluated independently
    const double oracle = std::exp(-9.83 * std::log(10.0));
    EXPECT_NEAR(dbm_to_mw(-98.3), oracle, 1e-22);
    EXPECT_NEAR(dbm_to_mw(-98.3), 1.479e-10, 0.001e-10);
}

TEST(Units, MilliwattRoundTrip) {
    for (double dbm = -140; dbm <= -44; dbm += 0.7) EXPECT_NEAR(mw_to_dbm(dbm_to_mw(dbm)), dbm, 1e-9);
}

TEST(ColorScale, BinBoundaries) {
    const ColorScale scale;
    EXPECT_EQ(scale.classify(-95.0), ColorBin::good);
    EXPECT_EQ(scale.classify(-95.5), ColorBin::fair);
    EXPECT_EQ(scale.classify(-105.0), ColorBin::fair);
    EXPECT_EQ(scale.classify(-105.1), ColorBin::poor);
    EXPECT_EQ(scale.classify(-120.0), ColorBin::poor);
    EXPECT_EQ(scale.classify(-120.5), ColorBin::bad);
    EXPECT_EQ(scale.classify(std::nullopt), ColorBin::none);
}

TEST(ColorScale, BinsPartitionTheAxis) {
    const ColorScale scale;
    ColorBin previous = ColorBin::bad;
    for (double r = -140.0; r <= -44.0; r += 0.25) {
        const auto bin = scale.classify(r);
        ASSERT_NE(bin, ColorBin::none);
        // bins only ever improve as rsrp grows
        EXPECT_LE(static_cast<int>(bin), static_cast<int>(previous));
        previous = bin;
    }
    for (auto bin : {ColorBin::good, ColorBin::fair, ColorBin::poor, ColorBin::bad, ColorBin::none})
        EXPECT_EQ(color_bin_from_string(to_string(bin)), bin);
}

TEST(Text, NumberRoundTrip) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int i = 0; i < 5000; ++i) {
        const double v = dist(rng);
        EXPECT_EQ(text::parse_double(text::format_number(v)), v);
    }
    EXPECT_EQ(text::format_number(-121.0), "-121");
    EXPECT_EQ(text::format_number(-0.0), "0");
    EXPECT_EQ(text::format_number(50.72027), "50.72027");
}

TEST(Text, ParsersRejectGarbage) {
    EXPECT_FALSE(text::parse_double("abc"));
    EXPECT_FALSE(text::parse_double("1.5x"));
    EXPECT_FALSE(text::parse_double("nan"));
    EXPECT_FALSE(text::parse_double(""));
    EXPECT_FALSE(text::parse_int("1.0"));
    EXPECT_EQ(text::parse_hex_u32("2E1"), 0x2E1u);
    EXPECT_FALSE(text::parse_hex_u32("XYZ"));
}

TEST(Text, TimestampHalvesRoundTrip) {
    const UtcTime t{std::chrono::milliseconds{1'715'680'803'042LL}};
    EXPECT_EQ(text::format_date(t), "2024-05-14");
    EXPECT_EQ(text::format_time_of_day(t), "10:00:03.042Z");
    EXPECT_EQ(text::format_iso8601(t), "2024-05-14T10:00:03.042Z");
    EXPECT_EQ(text::parse_date_time("2024-05-14", "10:00:03.042Z"), t);
    EXPECT_FALSE(text::parse_date_time("2024-13-14", "10:00:03.042Z"));
    EXPECT_FALSE(text::parse_date_time("2024-05-14", "25:00:03.042Z"));
}

TEST(VirtualClock, SleepAdvancesTime) {
    VirtualClock clock;
    const auto start = clock.now();
    clock.sleep_for(std::chrono::milliseconds{3000});
    EXPECT_EQ(clock.now() - start, std::chrono::milliseconds{3000});
}
