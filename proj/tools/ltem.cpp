// ltem: measurement station command line.
//
//   ltem serve    --backend sim:scenarios/building_b.json --port 8080 --campaign-dir data/
//   ltem simulate --scenario scenarios/building_b.json --out data/building-b
//   ltem analyze  data/building-b [--json]
//   ltem scatter  data/building-b --out plot
//   ltem scenario > my_scenario.json

#include <CLI11.hpp>
#include <httplib.h>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "ltem/analysis/analysis.hpp"
#include "ltem/analysis/report.hpp"
#include "ltem/modem/serial.hpp"
#include "ltem/persistence/csv.hpp"
#include "ltem/service/json.hpp"
#include "ltem/service/service.hpp"
#include "ltem/sim/scenario.hpp"
#include "ltem/sim/sim_modem.hpp"
#include "ltem/survey/survey.hpp"

namespace fs = std::filesystem;
using namespace ltem;

namespace {

httplib::Server* g_server = nullptr;

void on_signal(int) {
    if (g_server) g_server->stop();
}

sim::Scenario scenario_or_default(const std::string& path) {
    return path.empty() ? sim::default_scenario() : sim::load_scenario(path);
}

struct ServeArgs {
    std::string backend = "none";
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string campaign_dir;
    std::string static_dir;
    std::string building;
    long drx_cycle_ms = campaign::kDefaultDrxCycle.count();
    long interval_ms = 3000;
    unsigned samples = 5;
    unsigned fixes = 3;
    bool virtual_clock = false;
};

int serve(const ServeArgs& a) {
    campaign::MeasurementSettings defaults;
    defaults.drx_cycle = std::chrono::milliseconds{a.drx_cycle_ms};
    defaults.interval = std::chrono::milliseconds{a.interval_ms};
    defaults.samples_per_position = a.samples;
    defaults.gnss_fix_count = a.fixes;
    campaign::validate(defaults);

    service::ServiceOptions options;
    options.defaults = defaults;
    if (!a.campaign_dir.empty()) options.campaign_dir = fs::path(a.campaign_dir);
    if (!a.static_dir.empty()) options.static_dir = fs::path(a.static_dir);

    campaign::Campaign initial("campaign", a.building);
    if (options.campaign_dir && fs::exists(*options.campaign_dir / "manifest.json")) {
        initial = persistence::load_campaign(*options.campaign_dir);
        std::cerr << "loaded " << initial.records().size() << " records from " << a.campaign_dir << "\n";
    }

    SystemClock system_clock;
    VirtualClock virtual_clock;
    Clock& clock = a.virtual_clock ? static_cast<Clock&>(virtual_clock) : system_clock;

    std::shared_ptr<sim::SimModem> simulator;
    std::shared_ptr<modem::ModemBackend> backend;
    if (a.backend.rfind("sim:", 0) == 0) {
        auto scenario = sim::load_scenario(a.backend.substr(4));
        simulator = std::make_shared<sim::SimModem>(scenario, &clock);
        if (!scenario.buildings.empty()) {
            const auto& b = scenario.buildings.front();
            simulator->move_to(survey::perimeter_points(b, 1, 3.0).front());
            if (initial.building_label().empty()) initial = campaign::Campaign(initial.id(), b.id);
        }
    } else if (a.backend.rfind("serial:", 0) == 0) {
        backend = modem::SerialModemBackend::open(modem::parse_serial_spec(a.backend.substr(7)));
    } else if (a.backend != "none") {
        std::cerr << "unknown backend '" << a.backend << "' (expected serial:<device> or sim:<scenario>)\n";
        return 2;
    }

    service::Service svc(std::move(initial), backend, clock, options);
    if (simulator) svc.attach_simulator(simulator);

    httplib::Server server;
    svc.install(server);
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cerr << "listening on http://" << a.host << ":" << a.port << "/api/v1\n";
    if (!server.listen(a.host, a.port)) {
        std::cerr << "cannot listen on " << a.host << ":" << a.port << "\n";
        return 1;
    }
    return 0;
}

int simulate(const std::string& scenario_path, std::string building, const std::string& out,
             std::optional<std::uint64_t> seed, const ServeArgs& a) {
    auto scenario = scenario_or_default(scenario_path);
    if (seed) scenario.seed = *seed;
    if (building.empty()) {
        if (scenario.buildings.empty()) throw std::invalid_argument("scenario has no buildings");
        building = scenario.buildings.front().id;
    }
    auto options = survey::default_survey(scenario, building);
    options.settings.samples_per_position = a.samples;
    options.settings.gnss_fix_count = a.fixes;
    options.settings.interval = std::chrono::milliseconds{a.interval_ms};
    options.settings.drx_cycle = std::chrono::milliseconds{a.drx_cycle_ms};

    VirtualClock clock;
    sim::SimModem modem(scenario, &clock);
    const auto camp = survey::run_survey(modem, clock, options);
    persistence::save_campaign(camp, out);
    std::cout << "wrote " << camp.records().size() << " records to " << out << "\n";
    return 0;
}

int analyze(const std::string& dir, bool json) {
    const auto camp = persistence::load_campaign(dir);
    const auto report = analysis::build_report(camp.records(), camp.id(), camp.building_label());
    if (json)
        std::cout << service::report_to_json(report).dump(2) << "\n";
    else
        std::cout << analysis::render_text(report);
    return 0;
}

int scatter(const std::string& dir, const std::string& out) {
    const auto camp = persistence::load_campaign(dir);
    const auto points = analysis::scatter3d_export(camp.records());
    const std::string data_file = out + ".dat";
    {
        std::ofstream data(data_file);
        data << "# x y floor rsrp bin id room\n";
        for (const auto& p : points)
            data << p.x << ' ' << p.y << ' ' << p.floor << ' '
                 << (p.rsrp ? std::to_string(*p.rsrp) : std::string("NaN")) << ' ' << to_string(p.bin) << ' '
                 << render_id(p.id) << ' ' << p.room_id << '\n';
    }
    std::ofstream script(out + ".gp");
    script << "set title 'RSRP by floor'\n"
              "set xlabel 'x [px]'\nset ylabel 'y [px]'\nset zlabel 'floor'\n"
              "set cblabel 'RSRP [dBm]'\nset cbrange [-140:-80]\n"
              "set palette defined (-140 'red', -120 'orange', -105 'yellow', -95 'green')\n"
              "set yrange [*:*] reverse\n"
              "splot '"
           << data_file
           << "' using 1:2:3:4 with points pt 7 ps 1 palette title 'RSRP', \\\n"
              "      '' using 1:2:($4 != $4 ? $3 : 1/0) with points pt 6 ps 1 lc rgb 'black' title 'no reception'\n"
              "pause mouse close\n";
    std::cout << "wrote " << points.size() << " points to " << data_file << " and " << out << ".gp\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LTE building attenuation measurement station"};
    app.require_subcommand(1);

    ServeArgs args;
    auto add_settings = [&](CLI::App* cmd) {
        cmd->add_option("--drx-cycle", args.drx_cycle_ms, "Configured DRX cycle in ms")->capture_default_str();
        cmd->add_option("--interval", args.interval_ms, "Sample interval in ms")->capture_default_str();
        cmd->add_option("--samples", args.samples, "Samples per position")->capture_default_str();
        cmd->add_option("--fixes", args.fixes, "GNSS fixes averaged per outdoor position")->capture_default_str();
    };

    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
    serve_cmd->add_option("--backend", args.backend, "serial:<device>[@baud], sim:<scenario.json> or none")
        ->capture_default_str();
    serve_cmd->add_option("--host", args.host)->capture_default_str();
    serve_cmd->add_option("--port", args.port)->capture_default_str();
    serve_cmd->add_option("--campaign-dir", args.campaign_dir, "Load from and save to this directory");
    serve_cmd->add_option("--static-dir", args.static_dir, "Serve web client assets from this directory");
    serve_cmd->add_option("--building", args.building, "Building label of a new campaign");
    serve_cmd->add_flag("--virtual-clock", args.virtual_clock, "Do not wait between samples (simulator demos)");
    add_settings(serve_cmd);

    std::string scenario_path, building, out;
    std::optional<std::uint64_t> seed;
    auto* sim_cmd = app.add_subcommand("simulate", "Run a scripted survey against the simulator");
    sim_cmd->add_option("--scenario", scenario_path, "Scenario JSON (default: built-in)");
    sim_cmd->add_option("--building", building, "Building id (default: first)");
    sim_cmd->add_option("--seed", seed, "Override the scenario seed");
    sim_cmd->add_option("--out", out, "Campaign directory")->required();
    add_settings(sim_cmd);

    std::string dir;
    bool json = false;
    auto* analyze_cmd = app.add_subcommand("analyze", "Print the analysis report of a campaign directory");
    analyze_cmd->add_option("dir", dir)->required()->check(CLI::ExistingDirectory);
    analyze_cmd->add_flag("--json", json, "Machine-readable output");

    std::string plot_out = "scatter";
    auto* scatter_cmd = app.add_subcommand("scatter", "Write 3D scatter data and a gnuplot script");
    scatter_cmd->add_option("dir", dir)->required()->check(CLI::ExistingDirectory);
    scatter_cmd->add_option("--out", plot_out, "Output prefix")->capture_default_str();

    auto* scenario_cmd = app.add_subcommand("scenario", "Print the built-in default scenario as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*serve_cmd) return serve(args);
        if (*sim_cmd) return simulate(scenario_path, building, out, seed, args);
        if (*analyze_cmd) return analyze(dir, json);
        if (*scatter_cmd) return scatter(dir, plot_out);
        if (*scenario_cmd) {
            std::cout << sim::scenario_to_json(sim::default_scenario()) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
