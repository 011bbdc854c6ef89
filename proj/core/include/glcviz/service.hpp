#pragma once

// JSON API over one Session. Every response body is a JSON object carrying
// "schema_version"; failures carry "error".
//
//   GET  /api/dataset                     summary and scaling metadata
//   GET  /api/plot/config?plot=NAME       PlotConfig
//   PUT  /api/plot/config                 {"plot"?, "config": PlotConfig}
//   GET  /api/plot/geometry?plot=&blocks= vertex lists (blocks=1 adds bands)
//   GET  /api/hyperblocks                 HyperblockSet and purity table
//   PUT  /api/separators                  {"plot"?, "nonlinear"?: [...], "rules"?: RuleSeries|null}
//   GET  /api/rules                       RuleSeries, rule text and accuracy
//   POST /api/box-select                  SelectionBox (+ "store": bool) -> ids
//   POST /api/split                       {"options"?, "boxes"?} -> WorstSplit
//   POST /api/experiment                  {"config"?} -> ExperimentReport
//   GET  /api/project                     Project
//   PUT  /api/project                     Project (same dataset reference)
//   POST /api/project/save                {"path"?}

#include "glcviz/project.hpp"

#include <exception>
#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

namespace glcviz {

struct Response {
    int status = 200;
    std::string body;
};

/// 400 for glcviz and JSON errors, 500 with a fixed message for anything else.
Response error_response(std::exception_ptr error);

class Service {
public:
    /// `project_file` is the default save target; empty disables saving
    /// without an explicit path.
    explicit Service(Session session, std::filesystem::path project_file = {});

    /// Dispatches one request. `target` is the path with an optional query
    /// string. Reads take a shared lock; mutations are serialized.
    Response handle(std::string_view method, std::string_view target, const std::string& body);

    /// Copy of the current project.
    Project project() const;

private:
    Response route(std::string_view method, std::string_view path, std::string_view query, const std::string& body);

    mutable std::shared_mutex mutex_;
    Session session_;
    std::filesystem::path project_file_;
};

/// HTTP front end for a Service. Adds permissive CORS headers for the
/// browser workbench.
class HttpServer {
public:
    explicit HttpServer(Service& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds `port` (0 picks a free port); returns the bound port or -1.
    int bind(const std::string& host, int port);
    /// Blocks until stop().
    bool listen_after_bind();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace glcviz
