#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ltem/campaign/image.hpp"
#include "ltem/persistence/csv.hpp"
#include "ltem/sim/propagation.hpp"
#include "ltem/survey/survey.hpp"
#include "test_support.hpp"

using namespace ltem;
using namespace ltem::persistence;

namespace {

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::size_t field_count(const std::string& line) { return std::count(line.begin(), line.end(), ',') + 1; }

/// Ten positions of five samples from the default simulator, mixed indoor and outdoor.
campaign::Campaign simulated_campaign() {
    survey::SurveyOptions o;
    o.building_id = "default";
    o.outdoor_positions = 4;
    o.floors = {-1, 1, 3};
    o.rooms_per_floor = 2;
    o.points_per_room = 1;
    const auto scenario = sim::default_scenario();
    sim::SimModem modem(scenario);
    VirtualClock clock;
    return survey::run_survey(modem, clock, o);
}

}  // namespace

TEST(CsvExport, EmptyCampaignHasHeadersOnly) {
    const auto files = export_csv(campaign::Campaign{});
    EXPECT_EQ(files.outdoor, "id,latitude,longitude,altitude,utc,date,tac,cid,rsrp,rsrq,rssi,sinr\n");
    EXPECT_EQ(files.indoor, "id,utc,date,tac,cid,rsrp,rsrq,rssi,sinr,room,floor,outdoor_flag,map,x,y\n");
}

TEST(CsvExport, OneOutdoorRecordIsOneTwelveFieldRow) {
    campaign::Campaign c;
    auto r = ltem::testing::outdoor_record(1, 1, -98);
    std::get<GeoPosition>(r.position).latitude = 50.7001;
    c.restore({r});
    const auto rows = lines(export_csv(c).outdoor);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(field_count(rows[1]), 12u);
    EXPECT_EQ(rows[1], "1.1,50.7001,7.1,170,10:01:03.000Z,2024-05-14,737,6699,-98,-15,-72,32");
}

TEST(CsvExport, CensoredRsrpIsEmptyField) {
    campaign::Campaign c;
    c.restore({ltem::testing::indoor_record(1, 1, std::nullopt, -1, "K1")});
    const auto rows = lines(export_csv(c).indoor);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1], "1.1,10:01:03.000Z,2024-05-14,737,6699,,-15,-114,-10,K1,-1,0,plan,10,10");
}

TEST(CsvExport, QuotesFieldsWithSeparators) {
    campaign::Campaign c;
    c.restore({ltem::testing::indoor_record(1, 1, -100, 0, "Lab, \"west\"")});
    const auto files = export_csv(c);
    EXPECT_NE(files.indoor.find("\"Lab, \"\"west\"\"\""), std::string::npos);
    const auto back = import_csv(files.outdoor, files.indoor);
    EXPECT_EQ(back.records().front().meta->room_id, "Lab, \"west\"");
}

TEST(CsvRoundTrip, ExportImportExportIsByteIdentical) {
    const auto camp = simulated_campaign();
    ASSERT_EQ(camp.records().size(), 50u);
    const auto first = export_csv(camp);
    const auto back = import_csv(first.outdoor, first.indoor, camp.id(), camp.building_label());
    const auto second = export_csv(back);
    EXPECT_EQ(first.outdoor, second.outdoor);
    EXPECT_EQ(first.indoor, second.indoor);
    EXPECT_EQ(back.records(), camp.records());
}

TEST(CsvImport, MissingColumnIsSchemaMismatch) {
    const std::string outdoor = "id,latitude,longitude,altitude,utc,date,tac,cid,rsrp,rsrq,rssi\n";
    try {
        import_csv(outdoor, export_csv(campaign::Campaign{}).indoor);
        FAIL() << "no exception";
    } catch (const CsvError& e) {
        EXPECT_EQ(e.code(), CsvErrc::schema_mismatch);
        EXPECT_NE(std::string(e.what()).find("sinr"), std::string::npos);
    }
}

TEST(CsvImport, BadNumberIsRowErrorAtThatLine) {
    campaign::Campaign c;
    c.restore({ltem::testing::outdoor_record(1, 1, -98), ltem::testing::outdoor_record(1, 2, -99)});
    auto files = export_csv(c);
    const auto pos = files.outdoor.find(",-99,");
    files.outdoor.replace(pos, 5, ",abc,");
    try {
        import_csv(files.outdoor, files.indoor);
        FAIL() << "no exception";
    } catch (const CsvError& e) {
        EXPECT_EQ(e.code(), CsvErrc::row_error);
        EXPECT_EQ(e.line, 3u);
        EXPECT_EQ(e.field, "rsrp");
    }
}

TEST(CsvImport, RejectsRecordsFailingValidation) {
    campaign::Campaign c;
    c.restore({ltem::testing::outdoor_record(1, 1, -98)});
    auto files = export_csv(c);
    files.outdoor.replace(files.outdoor.find(",-98,"), 5, ",-150,");
    EXPECT_THROW(import_csv(files.outdoor, files.indoor), CsvError);
}

TEST(CsvImport, RejectsDuplicateIds) {
    campaign::Campaign c;
    c.restore({ltem::testing::outdoor_record(1, 1, -98)});
    auto files = export_csv(c);
    const auto row = lines(files.outdoor)[1];
    files.outdoor += row + "\n";
    EXPECT_THROW(import_csv(files.outdoor, files.indoor), std::exception);
}

TEST(CampaignDirectory, SaveLoadRoundTrip) {
    ltem::testing::TempDir dir;
    const auto camp = simulated_campaign();
    save_campaign(camp, dir.path());
    EXPECT_TRUE(std::filesystem::exists(dir.path() / "outdoor.csv"));
    EXPECT_TRUE(std::filesystem::exists(dir.path() / "manifest.json"));
    const auto back = load_campaign(dir.path());
    EXPECT_EQ(back.records(), camp.records());
    EXPECT_EQ(back.id(), camp.id());
    EXPECT_EQ(back.building_label(), camp.building_label());
    ASSERT_EQ(back.plans().size(), camp.plans().size());
    for (const auto& [id, plan] : camp.plans()) {
        const auto& other = back.plan(id);
        EXPECT_EQ(other.image, plan.image);
        EXPECT_EQ(other.width, plan.width);
        EXPECT_EQ(other.content_type, plan.content_type);
    }
    // saving again over the same directory yields the same bytes
    const auto before = export_csv(back);
    save_campaign(back, dir.path());
    std::ifstream in(dir.path() / "indoor.csv", std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), before.indoor);
}

TEST(CampaignDirectory, MissingDirectoryIsIoError) {
    try {
        load_campaign("/nonexistent/ltem-campaign");
        FAIL() << "no exception";
    } catch (const CsvError& e) {
        EXPECT_EQ(e.code(), CsvErrc::io);
    }
}
