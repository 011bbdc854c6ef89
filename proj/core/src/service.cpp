#include "glcviz/service.hpp"

#include "glcviz/error.hpp"

#include <httplib.h>

#include <cctype>
#include <map>
#include <mutex>

namespace glcviz {

namespace {

struct HttpError {
    int status;
    std::string message;
};

std::string percent_decode(std::string_view s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '+') {
            out += ' ';
        } else if (s[i] == '%' && i + 2 < s.size() && std::isxdigit(static_cast<unsigned char>(s[i + 1])) &&
                   std::isxdigit(static_cast<unsigned char>(s[i + 2]))) {
            out += static_cast<char>(std::stoi(std::string(s.substr(i + 1, 2)), nullptr, 16));
            i += 2;
        } else {
            out += s[i];
        }
    }
    return out;
}

std::map<std::string, std::string> parse_query(std::string_view query) {
    std::map<std::string, std::string> out;
    while (!query.empty()) {
        const auto amp = query.find('&');
        const auto item = query.substr(0, amp);
        const auto eq = item.find('=');
        if (!item.empty()) {
            out[percent_decode(item.substr(0, eq))] = eq == std::string_view::npos ? "" : percent_decode(item.substr(eq + 1));
        }
        if (amp == std::string_view::npos) break;
        query.remove_prefix(amp + 1);
    }
    return out;
}

bool truthy(const std::string& v) { return v == "1" || v == "true" || v == "yes"; }

json parse_body(const std::string& body) {
    if (body.empty()) return json::object();
    json j = json::parse(body);
    if (!j.is_object()) throw HttpError{400, "request body must be a JSON object"};
    return j;
}

Response reply(json payload, int status = 200) {
    payload["schema_version"] = kSchemaVersion;
    return {status, payload.dump()};
}

Response error_reply(int status, const std::string& message) {
    return reply(json{{"error", message}}, status);
}

json dataset_summary(const Dataset& data) {
    return json{{"name", data.name()},
                {"size", data.size()},
                {"dims", data.dims()},
                {"classes", data.classes()},
                {"class_counts", data.class_counts()},
                {"attributes", data.attributes()}};
}

std::map<std::size_t, NonlinearSeparator> parse_nonlinear(const json& list, std::size_t dims) {
    if (!list.is_array()) throw HttpError{400, "'nonlinear' must be an array"};
    std::map<std::size_t, NonlinearSeparator> out;
    for (const auto& item : list) {
        const auto attr = item.at("attribute").get<std::size_t>();
        if (attr >= dims) throw HttpError{400, "unknown attribute index " + std::to_string(attr)};
        out[attr] = item.get<NonlinearSeparator>();
    }
    return out;
}

}  // namespace

Service::Service(Session session, std::filesystem::path project_file)
    : session_(std::move(session)), project_file_(std::move(project_file)) {}

Project Service::project() const {
    std::shared_lock lock(mutex_);
    return session_.project();
}

Response Service::handle(std::string_view method, std::string_view target, const std::string& body) {
    const auto q = target.find('?');
    const auto path = target.substr(0, q);
    const auto query = q == std::string_view::npos ? std::string_view{} : target.substr(q + 1);
    try {
        return route(method, path, query, body);
    } catch (...) {
        return error_response(std::current_exception());
    }
}

Response error_response(std::exception_ptr error) {
    try {
        std::rethrow_exception(error);
    } catch (const HttpError& e) {
        return error_reply(e.status, e.message);
    } catch (const json::exception& e) {
        return error_reply(400, std::string("malformed request: ") + e.what());
    } catch (const Error& e) {
        return error_reply(400, e.what());
    } catch (...) {
        return error_reply(500, "internal error");
    }
}

Response Service::route(std::string_view method, std::string_view path, std::string_view query_text,
                        const std::string& body) {
    const auto query = parse_query(query_text);
    const auto param = [&](const char* key) {
        const auto it = query.find(key);
        return it == query.end() ? std::string{} : it->second;
    };
    const bool get = method == "GET";
    const bool put = method == "PUT";
    const bool post = method == "POST";
    const auto bad_method = [&] { return error_reply(405, "method not allowed"); };

    if (path == "/api/dataset") {
        if (!get) return bad_method();
        std::shared_lock lock(mutex_);
        return reply(json{{"dataset", dataset_summary(session_.data())}});
    }
    if (path == "/api/plot/config") {
        if (get) {
            std::shared_lock lock(mutex_);
            const auto name = param("plot").empty() ? session_.project().active_plot : param("plot");
            return reply(json{{"plot", name}, {"config", session_.plot(name)}});
        }
        if (!put) return bad_method();
        const auto j = parse_body(body);
        auto config = j.at("config").get<PlotConfig>();
        std::unique_lock lock(mutex_);
        const auto name = j.value("plot", session_.project().active_plot);
        session_.set_plot(name, std::move(config));
        return reply(json{{"plot", name}, {"config", session_.plot(name)}});
    }
    if (path == "/api/plot/geometry") {
        if (!get) return bad_method();
        std::shared_lock lock(mutex_);
        const auto name = param("plot").empty() ? session_.project().active_plot : param("plot");
        return reply(json{{"plot", name}, {"geometry", session_.geometry(name, truthy(param("blocks")))}});
    }
    if (path == "/api/hyperblocks") {
        if (!get) return bad_method();
        std::shared_lock lock(mutex_);
        const auto set = session_.hyperblocks();
        return reply(json{{"hyperblocks", set},
                          {"purity", purity_table_json(purity_table(set, session_.data()), session_.data())}});
    }
    if (path == "/api/separators") {
        if (!put) return bad_method();
        const auto j = parse_body(body);
        std::unique_lock lock(mutex_);
        const auto name = j.value("plot", session_.project().active_plot);
        if (j.contains("nonlinear")) session_.set_nonlinear(name, parse_nonlinear(j.at("nonlinear"), session_.data().dims()));
        if (j.contains("rules")) {
            const auto& r = j.at("rules");
            session_.set_rules(r.is_null() ? std::nullopt : std::optional<RuleSeries>(r.get<RuleSeries>()));
        }
        return reply(json{{"plot", name}, {"config", session_.plot(name)}, {"rules", session_.project().rules
                                                                                          ? json(*session_.project().rules)
                                                                                          : json(nullptr)}});
    }
    if (path == "/api/rules") {
        if (!get) return bad_method();
        std::shared_lock lock(mutex_);
        const auto series = session_.rules();
        const auto eval = series_accuracy(series, session_.data());
        return reply(json{{"rules", series},
                          {"text", rule_text(series, session_.data())},
                          {"accuracy", eval.accuracy},
                          {"stage_captures", eval.stage_captures},
                          {"default_captures", eval.default_captures}});
    }
    if (path == "/api/box-select") {
        if (!post) return bad_method();
        const auto j = parse_body(body);
        auto box = j.get<SelectionBox>();
        const bool store = j.value("store", false);
        const auto resolve_mode = [&] {
            if (!j.contains("mode")) box.mode = default_select_mode(session_.plot(box.plot).system);
        };
        std::vector<int> ids;
        if (store) {
            std::unique_lock lock(mutex_);
            resolve_mode();
            ids = session_.select(box);
            session_.add_box(box);
        } else {
            std::shared_lock lock(mutex_);
            resolve_mode();
            ids = session_.select(box);
        }
        return reply(json{{"box", box}, {"ids", ids}, {"count", ids.size()}, {"stored", store}});
    }
    if (path == "/api/split") {
        if (!post) return bad_method();
        const auto j = parse_body(body);
        std::unique_lock lock(mutex_);
        auto next = session_.project();
        if (j.contains("options")) next.split_options = j.at("options").get<SplitOptions>();
        if (j.contains("boxes")) next.boxes = j.at("boxes").get<std::vector<SelectionBox>>();
        if (!(next.split_options.target_fraction > 0.0 && next.split_options.target_fraction < 1.0)) {
            throw HttpError{400, "target fraction must lie in (0,1)"};
        }
        session_.replace(std::move(next));
        const auto& split = session_.make_split();
        return reply(json{{"split", split}});
    }
    if (path == "/api/experiment") {
        if (!post) return bad_method();
        const auto j = parse_body(body);
        std::unique_lock lock(mutex_);
        if (j.contains("config")) session_.set_experiment(j.at("config").get<ExperimentConfig>());
        const auto& report = session_.evaluate();
        return reply(json{{"report", report}, {"text", report_text(report)}});
    }
    if (path == "/api/project") {
        if (get) {
            std::shared_lock lock(mutex_);
            return reply(json{{"project", session_.to_json()}});
        }
        if (!put) return bad_method();
        auto j = parse_body(body);
        if (j.contains("project")) j = j.at("project");
        auto next = j.get<Project>();
        std::unique_lock lock(mutex_);
        session_.replace(std::move(next));
        return reply(json{{"project", session_.to_json()}});
    }
    if (path == "/api/project/save") {
        if (!post) return bad_method();
        const auto j = parse_body(body);
        std::unique_lock lock(mutex_);
        const std::filesystem::path target = j.contains("path") ? std::filesystem::path(j.at("path").get<std::string>())
                                                                 : project_file_;
        if (target.empty()) throw HttpError{400, "no save path given and the service has no project file"};
        session_.save(target);
        return reply(json{{"saved", target.string()}});
    }
    return error_reply(404, "unknown endpoint");
}

struct HttpServer::Impl {
    httplib::Server server;
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>()) {
    auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
        std::string target = req.path;
        if (!req.params.empty()) {
            target += '?';
            bool first = true;
            for (const auto& [k, v] : req.params) {
                if (!first) target += '&';
                first = false;
                target += httplib::detail::encode_query_param(k) + "=" + httplib::detail::encode_query_param(v);
            }
        }
        const auto r = service.handle(req.method, target, req.body);
        res.status = r.status;
        res.set_content(r.body, "application/json");
    };
    auto& s = impl_->server;
    s.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Methods", "GET, PUT, POST, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
    s.Get(".*", forward);
    s.Put(".*", forward);
    s.Post(".*", forward);
    s.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace glcviz
