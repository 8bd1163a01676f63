// Acceptance checks. One PASS/FAIL line per check; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>

#include "ltem/analysis/analysis.hpp"
#include "ltem/analysis/report.hpp"
#include "ltem/campaign/image.hpp"
#include "ltem/campaign/measure.hpp"
#include "ltem/modem/protocol.hpp"
#include "ltem/persistence/csv.hpp"
#include "ltem/sim/propagation.hpp"
#include "ltem/sim/sim_modem.hpp"
#include "ltem/survey/survey.hpp"

using namespace ltem;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[failed: " << what << "] ";
        }
    }
};

std::string fmt(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

double elapsed_s(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

sim::Scenario fixture(const std::string& name) { return sim::load_scenario(std::string(LTEM_SCENARIO_DIR) + "/" + name); }

analysis::SideSummary side(double mean, double sd) { return {mean, sd, 1, 0}; }

// ---------------------------------------------------------------------------

void summary_arithmetic(Outcome& o) {
    const auto b = analysis::combine_building_loss(side(-98.3, 4.5), side(-101.5, 7.2));
    const auto c = analysis::combine_building_loss(side(-101.0, 4.6), side(-116.5, 5.6));
    const auto a = analysis::combine_building_loss(side(-101.0, 6.7), side(-122.4, 4.2));
    o.check(std::abs(b.loss_mean - 3.2) <= 0.05, "B mean");
    o.check(std::abs(c.loss_mean - 15.5) <= 0.05, "C mean");
    o.check(std::abs(b.loss_sd - 8.49) <= 0.005 && std::abs(b.loss_sd - 8.4) <= 0.15, "B sd");
    o.check(std::abs(c.loss_sd - 7.24) <= 0.01 && std::abs(c.loss_sd - 7.2) <= 0.15, "C sd");
    o.check(std::abs(a.loss_mean - 21.4) <= 0.05, "A mean");
    // the reported 22.4 for A is one dB off its own means
    const bool a_inconsistent = std::abs(a.loss_mean - 22.4) > 0.5;
    o.check(a_inconsistent, "A inconsistency flag");
    o.detail << "B " << fmt(b.loss_mean) << " +/- " << fmt(b.loss_sd) << ", C " << fmt(c.loss_mean) << " +/- "
             << fmt(c.loss_sd) << ", A " << fmt(a.loss_mean) << " +/- " << fmt(a.loss_sd)
             << (a_inconsistent ? " (reported 22.4 flagged as rounding inconsistency)" : "");
}

// ---------------------------------------------------------------------------

double recovery_run(std::uint64_t seed) {
    auto scenario = sim::default_scenario();
    scenario.seed = seed;
    scenario.sigma_pl_db = 6.0;
    auto& b = scenario.buildings.front();
    b.l_b_db = 20.0;
    b.sigma_b_db = 4.0;
    b.facade_away_penalty_db = 0.0;
    sim::SimModem modem(scenario);
    VirtualClock clock;
    survey::SurveyOptions opt;
    opt.building_id = b.id;
    opt.outdoor_positions = 100;  // x5 samples = 500
    opt.floors = {0, 1};
    opt.rooms_per_floor = 10;
    opt.points_per_room = 5;  // 2 x 10 x 5 x 5 = 500
    const auto camp = survey::run_survey(modem, clock, opt);
    std::vector<MeasurementRecord> outdoor, indoor;
    for (const auto& r : camp.records()) (r.meta ? indoor : outdoor).push_back(r);
    if (outdoor.size() != 500 || indoor.size() != 500) throw std::logic_error("unexpected sample counts");
    return analysis::building_loss(outdoor, indoor).loss_mean;
}

void simulator_recovery(Outcome& o) {
    const auto start = std::chrono::steady_clock::now();
    const double fixed = recovery_run(42);
    const double single = elapsed_s(start);
    o.check(std::abs(fixed - 20.0) <= 1.5, "seed 42 within 20 +/- 1.5");
    int passing = 0;
    double worst = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const double est = recovery_run(seed);
        worst = std::max(worst, std::abs(est - 20.0));
        if (std::abs(est - 20.0) <= 1.5) ++passing;
    }
    const double total = elapsed_s(start);
    o.check(passing >= 19, "19 of 20 seeds");
    o.check(total < 10.0, "runtime");
    o.detail << "seed 42: " << fmt(fixed) << " dB; " << passing << "/20 seeds within 1.5 dB (worst error "
             << fmt(worst) << "); one run " << fmt(single, 3) << " s, all runs " << fmt(total, 2) << " s";
}

// ---------------------------------------------------------------------------

void floor_gain(Outcome& o) {
    {
        auto scenario = sim::default_scenario();
        scenario.sigma_pl_db = 0;
        auto& b = scenario.buildings.front();
        b.sigma_b_db = 0;
        b.floor_gain_db = 2.0;
        b.max_floor = 6;
        sim::SimModem modem(scenario);
        VirtualClock clock;
        survey::SurveyOptions opt;
        opt.building_id = b.id;
        opt.outdoor_positions = 0;
        opt.floors = {1, 2, 3, 4, 5, 6};
        const auto g = analysis::floor_height_gain(survey::run_survey(modem, clock, opt).records(), 1);
        o.check(std::abs(g.slope - 2.0) <= 1e-9, "noise-free slope");
        o.detail << "noise-free slope " << fmt(g.slope, 12) << "; ";
    }
    {
        const auto scenario = sim::default_scenario();
        sim::SimModem modem(scenario);
        VirtualClock clock;
        survey::SurveyOptions opt;
        opt.building_id = scenario.buildings.front().id;
        opt.outdoor_positions = 0;
        opt.floors = {1, 2, 3, 4};
        opt.rooms_per_floor = 10;
        opt.points_per_room = 10;  // 500 samples per floor
        const auto g = analysis::floor_height_gain(survey::run_survey(modem, clock, opt).records(), 1);
        const double gain = scenario.buildings.front().floor_gain_db;
        o.check(std::abs(g.slope - gain) <= 0.5, "noisy slope");
        o.detail << "noisy default slope " << fmt(g.slope, 3) << " (true " << fmt(gain, 1) << "); ";
    }
    {
        const auto scenario = fixture("building_b.json");
        const auto& b = scenario.buildings.front();
        sim::SimModem modem(scenario);
        VirtualClock clock;
        const auto camp = survey::run_survey(modem, clock, survey::default_survey(scenario, b.id));
        std::vector<MeasurementRecord> indoor;
        for (const auto& r : camp.records())
            if (r.meta) indoor.push_back(r);
        const auto g = analysis::floor_height_gain(indoor);
        bool monotone = true;
        std::optional<double> previous;
        o.detail << "building B best per floor:";
        for (int f = 0; f <= b.max_floor; ++f) {
            const auto it = g.floors.find(f);
            if (it == g.floors.end()) {
                monotone = false;
                continue;
            }
            o.detail << " " << f << ":" << fmt(it->second.best, 0);
            if (previous && !(it->second.best > *previous)) monotone = false;
            previous = it->second.best;
        }
        bool basement_censored = false;
        for (int f : g.censored_only) basement_censored |= f < 0;
        for (const auto& r : indoor)
            if (r.meta->floor < 0 && !r.sample.censored()) basement_censored = false;
        o.check(monotone, "best RSRP monotone on floors >= 0");
        o.check(basement_censored, "basement censored");
        o.detail << "; basement " << (basement_censored ? "censored" : "has readings");
    }
}

// ---------------------------------------------------------------------------

void spread_band(Outcome& o) {
    auto scenario = fixture("building_b.json");
    const auto id = scenario.buildings.front().id;
    int inside = 0;
    std::size_t min_samples = SIZE_MAX;
    std::vector<double> spreads;
    for (std::uint64_t seed = 42; seed < 62; ++seed) {
        scenario.seed = seed;
        sim::SimModem modem(scenario);
        VirtualClock clock;
        const auto camp = survey::run_survey(modem, clock, survey::default_survey(scenario, id));
        min_samples = std::min(min_samples, camp.records().size());
        const double spread = analysis::describe(camp.records()).spread();
        spreads.push_back(spread);
        if (spread >= 40.0 && spread <= 50.0) ++inside;
    }
    o.check(min_samples >= 1000, ">= 1000 samples");
    o.check(inside >= 18, "18 of 20 seeds");
    o.detail << inside << "/20 seeds in [40, 50] dB, " << min_samples << " samples per campaign, spreads";
    for (double s : spreads) o.detail << " " << fmt(s, 0);
}

// ---------------------------------------------------------------------------

/// Forwards to the simulator and remembers the draw behind every reading.
class RecordingBackend final : public modem::ModemBackend {
public:
    explicit RecordingBackend(sim::SimModem& modem) : modem_(modem) {}
    modem::Capabilities capabilities() const override { return modem_.capabilities(); }
    modem::AtResponse query_serving_cell() override {
        auto r = modem_.query_serving_cell();
        draws.push_back(*modem_.last_draw());
        return r;
    }
    std::string query_gga() override { return modem_.query_gga(); }
    std::string describe() const override { return "recording"; }

    std::vector<sim::PropagationDraw> draws;

private:
    sim::SimModem& modem_;
};

void censoring_contract(Outcome& o) {
    const auto scenario = fixture("building_b.json");
    const auto& b = scenario.buildings.front();
    sim::SimModem modem(scenario);
    RecordingBackend backend(modem);
    VirtualClock clock;
    campaign::Campaign camp("censoring", b.id);
    campaign::MeasurementSettings settings;

    for (const auto& p : survey::perimeter_points(b, 20, 3.0)) {
        modem.move_to(p);
        campaign::measure_outdoor(camp, settings, backend, clock);
    }
    for (int floor = -1; floor <= 1; ++floor) {
        const auto png = campaign::blank_png(static_cast<std::uint32_t>(b.width_m * 10),
                                             static_cast<std::uint32_t>(b.depth_m * 10));
        const auto& plan = campaign::upload_plan(camp, png, survey::plan_id(b.id, floor) + ".png");
        const std::string plan_id = plan.id;
        for (const auto& pt : survey::room_points(b, 4, 5, floor)) {
            modem.move_to(sim::IndoorLocation{b.id, floor, pt.x_m, pt.y_m});
            campaign::measure_indoor(camp, settings, backend, clock,
                                     PlanPosition{plan_id, pt.x_m * 10, (b.depth_m - pt.y_m) * 10},
                                     IndoorMeta{pt.room_id, floor, false});
        }
    }

    // wire and parser
    const auto& records = camp.records();
    std::size_t below = 0, mismatched = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const bool under = backend.draws[i].uncensored_rsrp < kSensitivityFloorDbm;
        below += under;
        if (under != records[i].sample.censored()) ++mismatched;
    }
    o.check(records.size() == backend.draws.size(), "one record per draw");
    o.check(below > 0, "some draws below -140");
    o.check(mismatched == 0, "censored iff below -140 after parsing");

    // persistence
    const auto files = persistence::export_csv(camp);
    const auto back = persistence::import_csv(files.outdoor, files.indoor, camp.id(), camp.building_label());
    std::size_t lost = 0;
    for (const auto& r : back.records()) {
        const auto original = camp.find(r.id);
        if (!original || original->sample.censored() != r.sample.censored()) ++lost;
    }
    o.check(back.records().size() == records.size() && lost == 0, "censoring survives CSV");

    // analysis
    const auto attenuation = analysis::floor_attenuation(back.records());
    const auto basement = std::find_if(attenuation.begin(), attenuation.end(), [](auto& f) { return f.floor == -1; });
    const bool bound_only = basement != attenuation.end() && !basement->loss_mean && basement->loss_lower_bound;
    o.check(bound_only, "basement reported as lower bound only");
    const auto text = analysis::render_text(analysis::build_report(back.records(), back.id(), back.building_label()));
    const auto line_start = text.find("floor -1:");
    const auto line = line_start == std::string::npos ? std::string() : text.substr(line_start, text.find('\n', line_start) - line_start);
    o.check(line.find("> ") != std::string::npos, "report shows '>' bound");
    const auto stats = analysis::describe(back.records());
    o.check(stats.censored_count == below, "censored samples excluded from statistics");
    o.detail << below << " of " << records.size() << " draws below -140 dBm, all censored through wire/CSV; report: \""
             << line << "\"";
}

// ---------------------------------------------------------------------------

std::string mutate(std::string line, std::mt19937_64& rng) {
    static const std::string alphabet = "0123456789,-\"+:ABCDEFGHIJKLMNOPQRSTUVWXYZabcdef .\r\n\t\x01\xff";
    std::uniform_int_distribution<int> op(0, 6);
    const int edits = 1 + static_cast<int>(rng() % 4);
    for (int e = 0; e < edits; ++e) {
        const std::size_t pos = line.empty() ? 0 : rng() % line.size();
        const char c = alphabet[rng() % alphabet.size()];
        switch (op(rng)) {
            case 0: if (!line.empty()) line[pos] = c; break;
            case 1: line.insert(line.begin() + pos, c); break;
            case 2: if (!line.empty()) line.erase(pos, 1); break;
            case 3: line.resize(pos); break;
            case 4: {
                const auto comma = line.find(',', pos);
                if (comma != std::string::npos) line.insert(comma, std::to_string(static_cast<long long>(rng())));
                break;
            }
            case 5: {
                const auto comma = line.find(',', pos);
                if (comma != std::string::npos) line.erase(comma, 1);
                break;
            }
            default: line += "," + std::to_string(static_cast<int>(rng() % 2000) - 1000); break;
        }
    }
    return line;
}

void round_trips(Outcome& o) {
    // fuzz
    const std::string base =
        R"(+QENG: "servingcell","NOCONN","eMTC","FDD",262,99,1A2B,5F,3,72,2,4,2E1,-121,-15,-95,9)";
    std::mt19937_64 rng(2024);
    std::size_t rejected = 0, accepted = 0, foreign = 0;
    for (int i = 0; i < 10000; ++i) {
        const std::string line = mutate(base, rng);
        modem::AtResponse response{{line}, modem::AtStatus::ok};
        try {
            const auto s = modem::parse_serving_cell(response, UtcTime{});
            if (s.rsrp && !std::isfinite(*s.rsrp)) ++foreign;
            ++accepted;
        } catch (const modem::ProtocolError&) {
            ++rejected;
        } catch (...) {
            ++foreign;
        }
    }
    o.check(foreign == 0, "fuzz raised only protocol errors");

    // render -> parse on simulator draws
    const auto scenario = sim::default_scenario();
    const auto& b = scenario.buildings.front();
    std::size_t mismatches = 0;
    for (std::uint64_t i = 0; i < 10000; ++i) {
        sim::SimLocation loc;
        if (i % 4 == 0) {
            loc = sim::offset_position(scenario.base_station, -2000.0 + i % 4000, 300.0 + 3 * i);
        } else {
            loc = sim::IndoorLocation{b.id, b.min_floor + static_cast<int>(i % (b.max_floor - b.min_floor + 1)),
                                      (i * 7 % 400) / 10.0, (i * 13 % 150) / 10.0};
        }
        const auto d = sim::draw_sample(scenario, loc, i);
        const UtcTime t{std::chrono::milliseconds{static_cast<std::int64_t>(i) * 3000}};
        if (modem::parse_serving_cell(sim::render_wire(d, scenario.cell), t) != sim::to_sample(d, scenario.cell, t))
            ++mismatches;
    }
    o.check(mismatches == 0, "render/parse identity");

    // CSV
    survey::SurveyOptions opt;
    opt.building_id = b.id;
    opt.outdoor_positions = 4;
    opt.floors = {-1, 1, 3};
    opt.rooms_per_floor = 2;
    opt.points_per_room = 1;
    sim::SimModem modem(scenario);
    VirtualClock clock;
    const auto camp = survey::run_survey(modem, clock, opt);
    const auto first = persistence::export_csv(camp);
    const auto second =
        persistence::export_csv(persistence::import_csv(first.outdoor, first.indoor, camp.id(), camp.building_label()));
    o.check(camp.records().size() == 50, "50 records");
    o.check(first.outdoor == second.outdoor && first.indoor == second.indoor, "CSV byte identity");
    o.detail << "fuzz: " << rejected << " rejected, " << accepted << " accepted, " << foreign
             << " unexpected; render/parse mismatches " << mismatches << "/10000; CSV " << camp.records().size()
             << " records " << (first.outdoor == second.outdoor && first.indoor == second.indoor ? "identical" : "differ");
}

// ---------------------------------------------------------------------------

/// Simulator with injected failures: error status on a chosen serving-cell
/// query, or no GNSS fix at all.
class FlakyBackend final : public modem::ModemBackend {
public:
    explicit FlakyBackend(sim::SimModem& modem) : modem_(modem) {}
    modem::Capabilities capabilities() const override { return modem_.capabilities(); }
    modem::AtResponse query_serving_cell() override {
        if (fail_after && (*fail_after)-- == 0) {
            fail_after.reset();
            return modem::AtResponse{{"+CME ERROR: 100"}, modem::AtStatus::error};
        }
        return modem_.query_serving_cell();
    }
    std::string query_gga() override {
        if (no_fix) return modem::render_gga(std::nullopt, std::chrono::milliseconds{0});
        return modem_.query_gga();
    }
    std::string describe() const override { return "flaky"; }

    std::optional<int> fail_after;
    bool no_fix = false;

private:
    sim::SimModem& modem_;
};

void procedure_invariants(Outcome& o) {
    const auto scenario = sim::default_scenario();
    const auto& b = scenario.buildings.front();
    sim::SimModem modem(scenario);
    FlakyBackend backend(modem);
    VirtualClock clock;
    campaign::Campaign camp("procedure", b.id);
    const auto png = campaign::blank_png(400, 150);
    campaign::upload_plan(camp, png, "plan.png");
    std::mt19937_64 rng(7);

    std::size_t attempts = 0, failures = 0, partial = 0, spacing_violations = 0;
    const std::chrono::milliseconds intervals[] = {std::chrono::milliseconds{2600}, std::chrono::milliseconds{3000},
                                                   std::chrono::milliseconds{5000}};
    const auto ring = survey::perimeter_points(b, 40, 3.0);
    for (int i = 0; i < 120; ++i) {
        campaign::MeasurementSettings settings;
        settings.interval = intervals[i % 3];
        settings.samples_per_position = 1 + static_cast<std::uint32_t>(rng() % 7);
        const int mode = static_cast<int>(rng() % 4);  // 0: cell error mid-series, 1: no fix, else clean
        backend.fail_after.reset();
        backend.no_fix = false;
        if (mode == 0) backend.fail_after = static_cast<int>(rng() % settings.samples_per_position);
        const bool outdoor = i % 2 == 0;
        if (mode == 1 && outdoor) backend.no_fix = true;

        const std::size_t before = camp.records().size();
        std::vector<MeasurementRecord> created;
        bool failed = false;
        try {
            if (outdoor) {
                modem.move_to(ring[i % ring.size()]);
                created = campaign::measure_outdoor(camp, settings, backend, clock);
            } else {
                const double x = static_cast<double>(rng() % 400), y = static_cast<double>(rng() % 150);
                modem.move_to(sim::IndoorLocation{b.id, 1, x / 10, 15 - y / 10});
                created = campaign::measure_indoor(camp, settings, backend, clock, PlanPosition{"plan", x, y},
                                                   IndoorMeta{"1.1", 1, false});
            }
        } catch (const std::exception&) {
            failed = true;
        }
        ++attempts;
        const std::size_t delta = camp.records().size() - before;
        if (failed) {
            ++failures;
            if (delta != 0) ++partial;
        } else {
            if (delta != settings.samples_per_position) ++partial;
            for (std::size_t k = 1; k < created.size(); ++k)
                if (created[k].sample.utc - created[k - 1].sample.utc < settings.interval) ++spacing_violations;
        }
    }
    o.check(failures > 0, "failures were injected");
    o.check(partial == 0, "positions atomic");
    o.check(spacing_violations == 0, "spacing >= interval");

    // ids
    const std::regex shape(R"(^[1-9][0-9]*\.[1-9][0-9]*$)");
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    std::size_t bad_ids = 0;
    auto check_ids = [&](const campaign::Campaign& c) {
        for (const auto& r : c.records()) {
            const auto text = render_id(r.id);
            if (!std::regex_match(text, shape) || parse_id(text) != r.id) ++bad_ids;
            if (!seen.insert({r.id.position_id, r.id.sample_id}).second) ++bad_ids;
        }
    };
    check_ids(camp);

    // a restored campaign keeps numbering past the restored ids
    const auto files = persistence::export_csv(camp);
    auto restored = persistence::import_csv(files.outdoor, files.indoor, camp.id(), camp.building_label());
    const std::uint32_t max_before = camp.records().empty() ? 0 : camp.records().back().id.position_id;
    modem.move_to(ring[0]);
    backend.fail_after.reset();
    backend.no_fix = false;
    const auto more = campaign::measure_outdoor(restored, campaign::MeasurementSettings{}, backend, clock);
    o.check(more.front().id.position_id > max_before, "restored numbering continues");
    seen.clear();
    check_ids(restored);
    o.check(bad_ids == 0, "ids X.Y unique and round-trip");
    o.detail << attempts << " positions attempted, " << failures << " failed with 0 partial commits; "
             << camp.records().size() << " records; spacing violations " << spacing_violations << "; id problems "
             << bad_ids;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<void(Outcome&)>> checks[] = {
        {"published summary arithmetic", summary_arithmetic},
        {"simulator loss recovery", simulator_recovery},
        {"floor height gain", floor_gain},
        {"spread band", spread_band},
        {"censoring contract", censoring_contract},
        {"wire and CSV round trips", round_trips},
        {"procedure invariants", procedure_invariants},
    };
    int failed = 0;
    int n = 0;
    for (const auto& [name, run] : checks) {
        ++n;
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << n << "] " << name << " (" << fmt(elapsed_s(start), 2)
                  << " s): " << o.detail.str() << std::endl;
    }
    std::cout << (failed == 0 ? "all acceptance checks passed" : std::to_string(failed) + " acceptance check(s) failed")
              << std::endl;
    return failed == 0 ? 0 : 1;
}
