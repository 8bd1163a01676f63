#include "ltem/service/service.hpp"

#include <httplib.h>

#include <iostream>

#include "ltem/analysis/analysis.hpp"
#include "ltem/analysis/report.hpp"
#include "ltem/campaign/image.hpp"
#include "ltem/campaign/measure.hpp"
#include "ltem/core/text.hpp"
#include "ltem/persistence/csv.hpp"
#include "ltem/service/json.hpp"

namespace ltem::service {

namespace {

constexpr const char* kJson = "application/json";

void send_json(httplib::Response& res, int status, const Json& body) {
    res.status = status;
    res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, int status, std::string_view code, std::string_view message,
                Json extra = Json::object()) {
    extra["error"] = code;
    extra["message"] = message;
    send_json(res, status, extra);
}

std::string_view modem_cause(modem::ModemErrc code) {
    switch (code) {
        case modem::ModemErrc::capability_missing: return "capability_missing";
        case modem::ModemErrc::timeout: return "timeout";
        case modem::ModemErrc::error_status: return "error_status";
        case modem::ModemErrc::invalid_sample: return "invalid_sample";
        case modem::ModemErrc::insufficient_fixes: return "insufficient_fixes";
        case modem::ModemErrc::io: return "io";
    }
    return "unknown";
}

std::string_view protocol_cause(modem::ProtocolErrc code) {
    switch (code) {
        case modem::ProtocolErrc::malformed_response: return "malformed_response";
        case modem::ProtocolErrc::unsupported_rat: return "unsupported_rat";
        case modem::ProtocolErrc::checksum_mismatch: return "checksum_mismatch";
        case modem::ProtocolErrc::no_fix: return "no_fix";
        case modem::ProtocolErrc::malformed_sentence: return "malformed_sentence";
    }
    return "unknown";
}

void send_backend_failure(httplib::Response& res, std::string_view kind, const std::exception& e) {
    send_error(res, 502, "backend_failure", e.what(), Json{{"cause", Json{{"kind", kind}, {"message", e.what()}}}});
}

std::optional<Json> parse_body(const httplib::Request& req, httplib::Response& res) {
    if (req.body.empty()) return Json::object();
    try {
        return Json::parse(req.body);
    } catch (const Json::parse_error& e) {
        send_error(res, 400, "bad_request", std::string("malformed JSON: ") + e.what());
        return std::nullopt;
    }
}

/// Runs one measurement through collect -> commit and answers the request.
template <class Collect>
void run_measurement(httplib::Response& res, Collect&& collect) {
    try {
        collect();
    } catch (const campaign::SettingsError& e) {
        send_error(res, 422, "invalid_settings", e.what(), Json{{"invariant", e.invariant}});
    } catch (const campaign::CampaignError& e) {
        switch (e.code()) {
            case campaign::CampaignErrc::unknown_plan: send_error(res, 404, "unknown_plan", e.what()); break;
            case campaign::CampaignErrc::out_of_bounds: send_error(res, 422, "out_of_bounds", e.what()); break;
            case campaign::CampaignErrc::invalid_record: send_backend_failure(res, "invalid_record", e); break;
            default: send_error(res, 422, "campaign_error", e.what()); break;
        }
    } catch (const modem::ModemError& e) {
        send_backend_failure(res, modem_cause(e.code()), e);
    } catch (const modem::ProtocolError& e) {
        send_backend_failure(res, protocol_cause(e.code()), e);
    } catch (const sim::SimError& e) {
        send_error(res, 422, "simulator_rejected", e.what());
    }
}

std::optional<int> int_param(const httplib::Request& req, const char* key) {
    if (!req.has_param(key)) return std::nullopt;
    const auto v = text::parse_int(req.get_param_value(key));
    if (!v) throw std::invalid_argument(std::string(key) + " must be an integer");
    return static_cast<int>(*v);
}

}  // namespace

Service::Service(campaign::Campaign initial, std::shared_ptr<modem::ModemBackend> backend, Clock& clock,
                 ServiceOptions options)
    : store_(std::move(initial)),
      backend_(std::move(backend)),
      clock_(clock),
      options_(std::move(options)),
      queue_(options_.queue_depth) {}

void Service::attach_simulator(std::shared_ptr<sim::SimModem> simulator) {
    simulator_ = simulator;
    backend_ = std::move(simulator);
}

const sim::BuildingModel& Service::sim_building() const {
    const auto& scenario = simulator_->scenario();
    const auto& label = store_.snapshot()->building_label();
    for (const auto& b : scenario.buildings)
        if (b.id == label) return b;
    if (scenario.buildings.empty())
        throw sim::SimError(sim::SimErrc::unknown_building, "scenario has no building for indoor positions");
    return scenario.buildings.front();
}

sim::IndoorLocation Service::plan_to_building(const campaign::FloorPlan& plan, const PlanPosition& click,
                                              int floor) const {
    const auto& b = sim_building();
    const double u = click.x / static_cast<double>(plan.width);
    const double v = click.y / static_cast<double>(plan.height);
    return sim::IndoorLocation{b.id, floor, u * b.width_m, (1.0 - v) * b.depth_m};
}

void Service::persist(const campaign::Campaign& snapshot) {
    if (!options_.campaign_dir) return;
    std::lock_guard lock(persist_mutex_);
    persistence::save_campaign(snapshot, *options_.campaign_dir);
}

void Service::install(httplib::Server& server) {
    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        try {
            std::rethrow_exception(ep);
        } catch (const std::invalid_argument& e) {
            send_error(res, 400, "bad_request", e.what());
        } catch (const Json::exception& e) {
            send_error(res, 400, "bad_request", e.what());
        } catch (const std::exception& e) {
            send_error(res, 500, "internal", e.what());
        } catch (...) {
            send_error(res, 500, "internal", "unknown error");
        }
    });

    if (options_.static_dir) server.set_mount_point("/", options_.static_dir->string());

    server.Get("/api/v1/status", [this](const httplib::Request&, httplib::Response& res) {
        const auto snap = store_.snapshot();
        Json body{{"campaign_id", snap->id()},
                  {"building", snap->building_label()},
                  {"records", snap->records().size()},
                  {"plans", snap->plans().size()},
                  {"next_position_id", snap->next_position_id()},
                  {"busy", queue_.outstanding() > 0},
                  {"settings", settings_to_json(options_.defaults)},
                  {"color_scale", color_scale_to_json(options_.scale)},
                  {"simulator", simulator_ != nullptr}};
        if (backend_) {
            const auto caps = backend_->capabilities();
            body["backend"] = Json{{"description", backend_->describe()},
                                   {"signal_readout", caps.signal_readout},
                                   {"gnss", caps.gnss}};
        } else {
            body["backend"] = nullptr;
        }
        send_json(res, 200, body);
    });

    auto respond_records = [this](httplib::Response& res, const std::vector<MeasurementRecord>& created,
                                  const std::shared_ptr<const campaign::Campaign>& snap) {
        Json records = Json::array();
        for (const auto& r : created) records.push_back(record_to_json(r, options_.scale));
        Json body{{"records", std::move(records)}};
        try {
            persist(*snap);
        } catch (const std::exception& e) {
            std::cerr << "ltem: saving campaign failed: " << e.what() << "\n";
            body["persist_error"] = e.what();
        }
        send_json(res, 200, body);
    };

    server.Post("/api/v1/measurements/outdoor", [this, respond_records](const httplib::Request& req,
                                                                        httplib::Response& res) {
        const auto body = parse_body(req, res);
        if (!body) return;
        run_measurement(res, [&] {
            const auto settings =
                settings_from_json(body->contains("settings") ? body->at("settings") : *body, options_.defaults);
            campaign::validate(settings);
            if (!backend_) {
                send_error(res, 503, "no_backend", "no modem backend attached");
                return;
            }
            auto ticket = queue_.enter();
            if (!ticket) {
                send_error(res, 409, "busy", "a measurement is running and the queue is full");
                return;
            }
            auto pending = campaign::collect_outdoor(settings, *backend_, clock_);
            auto created = store_.update([&](campaign::Campaign& c) {
                return c.commit_position(pending.position, pending.meta, pending.samples);
            });
            respond_records(res, created, store_.snapshot());
        });
    });

    server.Post("/api/v1/measurements/indoor", [this, respond_records](const httplib::Request& req,
                                                                       httplib::Response& res) {
        const auto body = parse_body(req, res);
        if (!body) return;
        run_measurement(res, [&] {
            for (const char* key : {"plan", "x", "y", "room", "floor"})
                if (!body->contains(key))
                    throw std::invalid_argument(std::string("missing field '") + key + "'");
            PlanPosition click{body->at("plan").get<std::string>(), body->at("x").get<double>(),
                               body->at("y").get<double>()};
            IndoorMeta meta{body->at("room").get<std::string>(), body->at("floor").get<int>(),
                            body->value("outdoor_flag", false)};
            const auto settings = settings_from_json(body->value("settings", Json()), options_.defaults);
            campaign::validate(settings);

            const auto& plan = store_.snapshot()->plan(click.map_id);
            if (!plan.contains(click.x, click.y))
                throw campaign::CampaignError(campaign::CampaignErrc::out_of_bounds,
                                              "click is outside plan '" + plan.id + "'");
            if (!backend_) {
                send_error(res, 503, "no_backend", "no modem backend attached");
                return;
            }
            auto ticket = queue_.enter();
            if (!ticket) {
                send_error(res, 409, "busy", "a measurement is running and the queue is full");
                return;
            }
            const auto snap = store_.snapshot();
            if (simulator_) simulator_->move_to(plan_to_building(snap->plan(click.map_id), click, meta.floor));
            auto pending = campaign::collect_indoor(*snap, settings, *backend_, clock_, click, meta);
            auto created = store_.update([&](campaign::Campaign& c) {
                return c.commit_position(pending.position, pending.meta, pending.samples);
            });
            respond_records(res, created, store_.snapshot());
        });
    });

    server.Post("/api/v1/plans", [this](const httplib::Request& req, httplib::Response& res) {
        const std::string name = req.has_param("name") ? req.get_param_value("name") : req.get_header_value("X-Filename");
        if (name.empty()) return send_error(res, 400, "bad_request", "plan upload needs ?name=<file name>");
        const std::span<const std::uint8_t> bytes(reinterpret_cast<const std::uint8_t*>(req.body.data()),
                                                  req.body.size());
        try {
            auto plan = store_.update([&](campaign::Campaign& c) { return campaign::upload_plan(c, bytes, name); });
            Json body = plan_to_json(plan);
            try {
                persist(*store_.snapshot());
            } catch (const std::exception& e) {
                body["persist_error"] = e.what();
            }
            send_json(res, 201, body);
        } catch (const campaign::CampaignError& e) {
            if (e.code() == campaign::CampaignErrc::duplicate_plan_id)
                send_error(res, 409, "duplicate_plan", e.what());
            else
                send_error(res, 422, "undecodable_image", e.what());
        }
    });

    server.Get("/api/v1/plans", [this](const httplib::Request&, httplib::Response& res) {
        Json list = Json::array();
        for (const auto& [id, plan] : store_.snapshot()->plans()) list.push_back(plan_to_json(plan));
        send_json(res, 200, Json{{"plans", std::move(list)}});
    });

    server.Get(R"(/api/v1/plans/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        const auto snap = store_.snapshot();
        const auto it = snap->plans().find(req.matches[1].str());
        if (it == snap->plans().end()) return send_error(res, 404, "unknown_plan", "no such plan");
        send_json(res, 200, plan_to_json(it->second));
    });

    server.Get(R"(/api/v1/plans/([^/]+)/image)", [this](const httplib::Request& req, httplib::Response& res) {
        const auto snap = store_.snapshot();
        const auto it = snap->plans().find(req.matches[1].str());
        if (it == snap->plans().end()) return send_error(res, 404, "unknown_plan", "no such plan");
        const auto& image = it->second.image;
        res.set_content(std::string(image.begin(), image.end()), it->second.content_type);
    });

    server.Get("/api/v1/records", [this](const httplib::Request& req, httplib::Response& res) {
        analysis::RecordFilter f;
        f.floor = int_param(req, "floor");
        if (req.has_param("room")) f.room = req.get_param_value("room");
        if (req.has_param("bin")) {
            f.bin = color_bin_from_string(req.get_param_value("bin"));
            if (!f.bin) return send_error(res, 400, "bad_request", "unknown bin");
        }
        if (req.has_param("kind")) {
            const auto kind = req.get_param_value("kind");
            if (kind != "indoor" && kind != "outdoor")
                return send_error(res, 400, "bad_request", "kind must be indoor or outdoor");
            f.indoor = kind == "indoor";
        }
        const auto snap = store_.snapshot();
        Json list = Json::array();
        if (!req.has_param("building") || req.get_param_value("building") == snap->building_label())
            for (const auto& r : analysis::filter(snap->records(), f, options_.scale))
                list.push_back(record_to_json(r, options_.scale));
        send_json(res, 200, Json{{"records", std::move(list)}});
    });

    server.Get(R"(/api/v1/records/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        const auto id = parse_id(req.matches[1].str());
        const auto record = store_.snapshot()->find(id);
        if (!record) return send_error(res, 404, "unknown_record", "no record " + render_id(id));
        send_json(res, 200, record_to_json(*record, options_.scale));
    });

    server.Get("/api/v1/analysis", [this](const httplib::Request& req, httplib::Response& res) {
        const auto snap = store_.snapshot();
        const auto report = analysis::build_report(snap->records(), snap->id(), snap->building_label());
        if (req.get_param_value("format") == "text") {
            res.set_content(analysis::render_text(report), "text/plain; charset=utf-8");
        } else {
            send_json(res, 200, report_to_json(report));
        }
    });

    server.Get("/api/v1/scatter3d", [this](const httplib::Request&, httplib::Response& res) {
        Json points = Json::array();
        for (const auto& p : analysis::scatter3d_export(store_.snapshot()->records(), options_.scale))
            points.push_back(scatter_to_json(p));
        send_json(res, 200, Json{{"points", std::move(points)}});
    });

    server.Get(R"(/api/v1/export/(outdoor|indoor)\.csv)", [this](const httplib::Request& req, httplib::Response& res) {
        const auto files = persistence::export_csv(*store_.snapshot());
        const bool outdoor = req.matches[1].str() == "outdoor";
        res.set_header("Content-Disposition", std::string("attachment; filename=\"") +
                                                  (outdoor ? "outdoor" : "indoor") + ".csv\"");
        res.set_content(outdoor ? files.outdoor : files.indoor, "text/csv; charset=utf-8");
    });

    server.Get("/api/v1/sim/location", [this](const httplib::Request&, httplib::Response& res) {
        if (!simulator_) return send_error(res, 404, "no_simulator", "backend is not the simulator");
        auto ticket = queue_.enter();
        if (!ticket) return send_error(res, 409, "busy", "a measurement is running and the queue is full");
        const auto& loc = simulator_->location();
        if (!loc) return send_json(res, 200, Json{{"location", nullptr}});
        if (const auto* geo = std::get_if<GeoPosition>(&*loc)) {
            send_json(res, 200, Json{{"kind", "outdoor"},
                                     {"latitude", geo->latitude},
                                     {"longitude", geo->longitude},
                                     {"altitude", geo->altitude}});
        } else {
            const auto& in = std::get<sim::IndoorLocation>(*loc);
            send_json(res, 200, Json{{"kind", "indoor"},
                                     {"building", in.building_id},
                                     {"floor", in.floor},
                                     {"x_m", in.x_m},
                                     {"y_m", in.y_m}});
        }
    });

    server.Put("/api/v1/sim/location", [this](const httplib::Request& req, httplib::Response& res) {
        if (!simulator_) return send_error(res, 404, "no_simulator", "backend is not the simulator");
        const auto body = parse_body(req, res);
        if (!body) return;
        sim::SimLocation location;
        if (body->value("kind", "outdoor") == "indoor") {
            location = sim::IndoorLocation{body->at("building").get<std::string>(), body->at("floor").get<int>(),
                                           body->at("x_m").get<double>(), body->at("y_m").get<double>()};
        } else {
            location = GeoPosition{body->at("latitude").get<double>(), body->at("longitude").get<double>(),
                                   body->value("altitude", 0.0)};
        }
        auto ticket = queue_.enter();
        if (!ticket) return send_error(res, 409, "busy", "a measurement is running and the queue is full");
        try {
            simulator_->move_to(location);
        } catch (const sim::SimError& e) {
            return send_error(res, 422, "simulator_rejected", e.what());
        }
        send_json(res, 200, Json{{"ok", true}});
    });
}

}  // namespace ltem::service
