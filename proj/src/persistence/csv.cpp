#include "ltem/persistence/csv.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <span>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "ltem/campaign/image.hpp"
#include "ltem/core/text.hpp"
#include "ltem/core/validation.hpp"

namespace ltem::persistence {

namespace {

using campaign::Campaign;

std::string quote(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

template <std::size_t N>
std::string header(const std::array<std::string_view, N>& columns) {
    std::string out;
    for (std::size_t i = 0; i < N; ++i) {
        if (i) out += ',';
        out += columns[i];
    }
    return out + "\n";
}

void append_row(std::string& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += quote(fields[i]);
    }
    out += '\n';
}

std::vector<std::string> signal_fields(const SignalSample& s) {
    return {text::format_time_of_day(s.utc), text::format_date(s.utc),  std::to_string(s.tac),
            std::to_string(s.cid),           s.rsrp ? text::format_number(*s.rsrp) : std::string{},
            text::format_number(s.rsrq),     text::format_number(s.rssi), text::format_number(s.sinr)};
}

// RFC 4180 rows; returns rows with their starting line numbers.
struct Row {
    std::size_t line;
    std::vector<std::string> fields;
};

std::vector<Row> parse_rows(std::string_view data) {
    std::vector<Row> rows;
    std::size_t line = 1;
    std::size_t i = 0;
    while (i < data.size()) {
        Row row{line, {}};
        std::string field;
        bool in_quotes = false;
        bool done = false;
        while (!done) {
            if (i >= data.size()) {
                row.fields.push_back(std::move(field));
                done = true;
                break;
            }
            const char c = data[i++];
            if (in_quotes) {
                if (c == '"') {
                    if (i < data.size() && data[i] == '"') {
                        field += '"';
                        ++i;
                    } else {
                        in_quotes = false;
                    }
                } else {
                    if (c == '\n') ++line;
                    field += c;
                }
            } else if (c == '"' && field.empty()) {
                in_quotes = true;
            } else if (c == ',') {
                row.fields.push_back(std::move(field));
                field.clear();
            } else if (c == '\r' && i < data.size() && data[i] == '\n') {
                // CRLF handled at the LF
            } else if (c == '\n') {
                row.fields.push_back(std::move(field));
                ++line;
                done = true;
            } else {
                field += c;
            }
        }
        if (in_quotes) throw CsvError(CsvErrc::row_error, "unterminated quoted field", row.line);
        if (row.fields.size() == 1 && row.fields.front().empty()) continue;  // blank line
        rows.push_back(std::move(row));
    }
    return rows;
}

template <std::size_t N>
void check_header(const std::vector<Row>& rows, const std::array<std::string_view, N>& columns, const char* file) {
    if (rows.empty()) throw CsvError(CsvErrc::schema_mismatch, std::string(file) + ": missing header row", 1);
    const auto& got = rows.front().fields;
    for (std::size_t i = 0; i < N; ++i) {
        if (i >= got.size() || got[i] != columns[i]) {
            const bool present = std::find(got.begin(), got.end(), columns[i]) != got.end();
            throw CsvError(CsvErrc::schema_mismatch,
                           std::string(file) + ": column " + std::to_string(i + 1) + " should be '" +
                               std::string(columns[i]) + "'" + (present ? " (out of order)" : " (missing)"),
                           1, std::string(columns[i]));
        }
    }
    if (got.size() != N)
        throw CsvError(CsvErrc::schema_mismatch, std::string(file) + ": unexpected extra column '" + got[N] + "'", 1,
                       got[N]);
}

class RowReader {
public:
    RowReader(const Row& row, std::span<const std::string_view> columns, const char* file)
        : row_(row), columns_(columns), file_(file) {
        if (row.fields.size() != columns.size())
            throw CsvError(CsvErrc::row_error,
                           std::string(file) + " line " + std::to_string(row.line) + ": expected " +
                               std::to_string(columns.size()) + " fields, got " + std::to_string(row.fields.size()),
                           row.line);
    }

    const std::string& raw(std::string_view column) const { return row_.fields[index(column)]; }

    [[noreturn]] void fail(std::string_view column, const std::string& why) const {
        throw CsvError(CsvErrc::row_error,
                       std::string(file_) + " line " + std::to_string(row_.line) + ", field '" +
                           std::string(column) + "': " + why,
                       row_.line, std::string(column));
    }

    double number(std::string_view column) const {
        const auto v = text::parse_double(raw(column));
        if (!v) fail(column, "'" + raw(column) + "' is not a number");
        return *v;
    }

    std::uint32_t unsigned_int(std::string_view column) const {
        const auto v = text::parse_int(raw(column));
        if (!v || *v < 0 || *v > 0xFFFFFFFFLL) fail(column, "'" + raw(column) + "' is not an unsigned integer");
        return static_cast<std::uint32_t>(*v);
    }

    int signed_int(std::string_view column) const {
        const auto v = text::parse_int(raw(column));
        if (!v || *v < -1000 || *v > 1000) fail(column, "'" + raw(column) + "' is not a floor number");
        return static_cast<int>(*v);
    }

    MeasurementId id() const {
        try {
            return parse_id(raw("id"));
        } catch (const std::invalid_argument& e) {
            fail("id", e.what());
        }
    }

    SignalSample sample() const {
        SignalSample s;
        const auto utc = text::parse_date_time(raw("date"), raw("utc"));
        if (!utc) fail("utc", "bad date/time '" + raw("date") + " " + raw("utc") + "'");
        s.utc = *utc;
        s.tac = unsigned_int("tac");
        s.cid = unsigned_int("cid");
        if (!raw("rsrp").empty()) s.rsrp = number("rsrp");
        s.rsrq = number("rsrq");
        s.rssi = number("rssi");
        s.sinr = number("sinr");
        return s;
    }

    void validate(const MeasurementRecord& record) const {
        const auto check = validate_record(record);
        if (!check) fail(check.violations.front().field, check.describe());
    }

private:
    std::size_t index(std::string_view column) const {
        return static_cast<std::size_t>(std::find(columns_.begin(), columns_.end(), column) - columns_.begin());
    }

    const Row& row_;
    std::span<const std::string_view> columns_;
    const char* file_;
};

}  // namespace

CsvFiles export_csv(const Campaign& campaign) {
    CsvFiles files{header(kOutdoorColumns), header(kIndoorColumns)};
    for (const auto& r : campaign.records()) {
        if (const auto* geo = std::get_if<GeoPosition>(&r.position)) {
            std::vector<std::string> fields{render_id(r.id), text::format_number(geo->latitude),
                                            text::format_number(geo->longitude), text::format_number(geo->altitude)};
            auto signal = signal_fields(r.sample);
            fields.insert(fields.end(), signal.begin(), signal.end());
            append_row(files.outdoor, fields);
        } else {
            const auto& plan = std::get<PlanPosition>(r.position);
            const auto& meta = *r.meta;
            std::vector<std::string> fields{render_id(r.id)};
            auto signal = signal_fields(r.sample);
            fields.insert(fields.end(), signal.begin(), signal.end());
            fields.insert(fields.end(), {meta.room_id, std::to_string(meta.floor), meta.outdoor_flag ? "1" : "0",
                                         plan.map_id, text::format_number(plan.x), text::format_number(plan.y)});
            append_row(files.indoor, fields);
        }
    }
    return files;
}

Campaign import_csv(std::string_view outdoor, std::string_view indoor, std::string campaign_id,
                    std::string building_label) {
    std::vector<MeasurementRecord> records;

    const auto outdoor_rows = parse_rows(outdoor);
    check_header(outdoor_rows, kOutdoorColumns, "outdoor.csv");
    for (std::size_t i = 1; i < outdoor_rows.size(); ++i) {
        const RowReader row(outdoor_rows[i], kOutdoorColumns, "outdoor.csv");
        MeasurementRecord r;
        r.id = row.id();
        r.position = GeoPosition{row.number("latitude"), row.number("longitude"), row.number("altitude")};
        r.sample = row.sample();
        row.validate(r);
        records.push_back(std::move(r));
    }

    const auto indoor_rows = parse_rows(indoor);
    check_header(indoor_rows, kIndoorColumns, "indoor.csv");
    for (std::size_t i = 1; i < indoor_rows.size(); ++i) {
        const RowReader row(indoor_rows[i], kIndoorColumns, "indoor.csv");
        MeasurementRecord r;
        r.id = row.id();
        r.sample = row.sample();
        const auto& flag = row.raw("outdoor_flag");
        if (flag != "0" && flag != "1") row.fail("outdoor_flag", "'" + flag + "' is not 0 or 1");
        r.meta = IndoorMeta{row.raw("room"), row.signed_int("floor"), flag == "1"};
        r.position = PlanPosition{row.raw("map"), row.number("x"), row.number("y")};
        row.validate(r);
        records.push_back(std::move(r));
    }

    Campaign campaign(std::move(campaign_id), std::move(building_label));
    try {
        campaign.restore(std::move(records));
    } catch (const campaign::CampaignError& e) {
        throw CsvError(CsvErrc::row_error, e.what(), 0, "id");
    }
    return campaign;
}

namespace {

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CsvError(CsvErrc::io, "cannot write " + tmp);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw CsvError(CsvErrc::io, "short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CsvError(CsvErrc::io, "cannot read " + path.string());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

void save_campaign(const Campaign& campaign, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir / "plans");
    const auto files = export_csv(campaign);
    write_file(dir / "outdoor.csv", files.outdoor);
    write_file(dir / "indoor.csv", files.indoor);

    nlohmann::json manifest;
    manifest["campaign_id"] = campaign.id();
    manifest["building_label"] = campaign.building_label();
    manifest["plans"] = nlohmann::json::array();
    for (const auto& [id, plan] : campaign.plans()) {
        const auto target = dir / "plans" / plan.filename;
        if (!std::filesystem::exists(target))
            write_file(target, std::string_view(reinterpret_cast<const char*>(plan.image.data()), plan.image.size()));
        manifest["plans"].push_back({{"id", id}, {"filename", plan.filename}, {"content_type", plan.content_type}});
    }
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

Campaign load_campaign(const std::filesystem::path& dir) {
    nlohmann::json manifest = nlohmann::json::object();
    if (std::filesystem::exists(dir / "manifest.json")) {
        try {
            manifest = nlohmann::json::parse(read_file(dir / "manifest.json"));
        } catch (const nlohmann::json::exception& e) {
            throw CsvError(CsvErrc::io, "manifest.json: " + std::string(e.what()));
        }
    }
    auto campaign = import_csv(read_file(dir / "outdoor.csv"), read_file(dir / "indoor.csv"),
                               manifest.value("campaign_id", std::string("campaign")),
                               manifest.value("building_label", std::string{}));
    for (const auto& entry : manifest.value("plans", nlohmann::json::array())) {
        const auto filename = entry.at("filename").get<std::string>();
        const auto bytes = read_file(dir / "plans" / filename);
        const std::span<const std::uint8_t> image(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size());
        const auto info = campaign::decode_image(image);
        campaign::FloorPlan plan{entry.at("id").get<std::string>(), filename, info.content_type,
                                 std::vector<std::uint8_t>(image.begin(), image.end()), info.width, info.height};
        campaign.add_plan(std::move(plan));
    }
    return campaign;
}

}  // namespace ltem::persistence
