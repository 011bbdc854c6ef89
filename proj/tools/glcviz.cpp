#include "glcviz/error.hpp"
#include "glcviz/project.hpp"
#include "glcviz/render.hpp"
#include "glcviz/service.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace glcviz;

std::vector<std::string> split_list(const std::string& text, char sep = ',') {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

double parse_double(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw ConfigError("invalid " + what + " '" + text + "'");
    return v;
}

std::size_t attribute_ref(const Dataset& data, const std::string& text) {
    const int named = data.attribute_index(text);
    if (named >= 0) return static_cast<std::size_t>(named);
    const double v = parse_double(text, "attribute");
    if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)) || static_cast<std::size_t>(v) >= data.dims()) {
        throw ConfigError("unknown attribute '" + text + "'");
    }
    return static_cast<std::size_t>(v);
}

Rect parse_box(const std::string& text) {
    const auto parts = split_list(text);
    if (parts.size() != 4) throw ConfigError("box must be x0,y0,x1,y1");
    Rect r{parse_double(parts[0], "box"), parse_double(parts[1], "box"), parse_double(parts[2], "box"),
           parse_double(parts[3], "box")};
    if (r.x_min > r.x_max) std::swap(r.x_min, r.x_max);
    if (r.y_min > r.y_max) std::swap(r.y_min, r.y_max);
    return r;
}

int parse_depth(const std::string& text) {
    if (text == "none" || text == "unlimited") return kUnlimitedDepth;
    const double v = parse_double(text, "depth");
    if (v < 1 || v != static_cast<int>(v)) throw ConfigError("depth must be a positive integer or 'none'");
    return static_cast<int>(v);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
    if (!out) throw Error("failed writing " + path);
}

Dataset load_with_duplicates(const std::string& path, const std::string& class_column,
                             const std::vector<std::string>& duplicates) {
    DatasetRef ref;
    ref.path = std::filesystem::absolute(path).string();
    ref.class_column = class_column;
    ref.duplicate_attributes = duplicates;
    return load_project_dataset(ref, std::filesystem::current_path());
}

struct PlotArgs {
    std::string data;
    std::string system = "dsc1";
    std::string order;
    std::string weights;
    std::vector<std::string> separators;
    std::vector<std::string> duplicates;
    std::string class_column = "class";
    std::string out = "plot.svg";
    std::string geometry_out;
    std::string depth = "none";
    bool bands = false;
    double first_angle = -10.0;
    double rest_angle = -45.0;
};

int run_plot(const PlotArgs& a) {
    const auto data = load_with_duplicates(a.data, a.class_column, a.duplicates);
    PlotConfig config;
    config.system = coordinate_system_from_string(a.system);
    config.first_angle = a.first_angle;
    config.rest_angle = a.rest_angle;
    if (!a.order.empty()) {
        for (const auto& item : split_list(a.order)) config.attribute_order.push_back(attribute_ref(data, item));
    }
    if (!a.weights.empty()) {
        for (const auto& item : split_list(a.weights)) config.pair_weights.push_back(parse_double(item, "weight"));
    }
    for (const auto& spec : a.separators) {
        const auto parts = split_list(spec, ':');
        if (parts.size() < 2 || parts.size() > 3) throw ConfigError("separator must be ATTR:POSITION[:TARGET]");
        NonlinearSeparator s;
        s.position = parse_double(parts[1], "separator position");
        if (parts.size() == 3) s.target = parse_double(parts[2], "separator target");
        s.validate();
        config.nonlinear[attribute_ref(data, parts[0])] = s;
    }
    config.validate(data.dims());

    auto geometry = map_plot(data, config);
    if (a.bands) {
        TreeParams params;
        params.max_depth = parse_depth(a.depth);
        geometry.overlays = hb_boundary_bands(extract_hyperblocks(fit_tree(data, params), data), config);
    }
    write_file(a.out, render_svg(geometry, {}, RenderSpec{}, data.classes()));
    if (!a.geometry_out.empty()) write_file(a.geometry_out, json(geometry).dump(2) + "\n");
    std::cout << "wrote " << a.out << " (" << geometry.polylines.size() << " polylines)\n";
    return 0;
}

struct BlocksArgs {
    std::string data;
    std::string depth = "none";
    std::string format = "text";
    std::string class_column = "class";
    std::vector<std::string> duplicates;
    bool rules = false;
};

int run_hyperblocks(const BlocksArgs& a) {
    const auto data = load_with_duplicates(a.data, a.class_column, a.duplicates);
    TreeParams params;
    params.max_depth = parse_depth(a.depth);
    const auto tree = fit_tree(data, params);
    const auto set = extract_hyperblocks(tree, data);
    const auto rows = purity_table(set, data);
    if (a.format == "csv") {
        std::cout << purity_table_csv(rows, data);
    } else if (a.format == "json") {
        std::cout << json{{"hyperblocks", set}, {"purity", purity_table_json(rows, data)}}.dump(2) << '\n';
    } else if (a.format == "text") {
        std::cout << purity_table_text(rows, data);
    } else {
        throw ConfigError("unknown format '" + a.format + "'");
    }
    if (a.rules) {
        const auto series = compile_tree_to_series(tree);
        std::cout << '\n' << rule_text(series, data);
        char line[96];
        std::snprintf(line, sizeof line, "accuracy %.2f%%, %zu plots\n",
                      100.0 * series_accuracy(series, data).accuracy, series.plot_count());
        std::cout << line;
    }
    return 0;
}

struct SplitArgs {
    std::string project;
    std::vector<std::string> boxes;
    std::string mode;
    std::string plot;
    double fraction = 0.10;
    std::uint64_t seed = 0;
    std::size_t cap = 0;
    std::string validation_out;
    std::string training_out;
    bool keep_boxes = false;
};

int run_split(const SplitArgs& a) {
    auto session = Session::open(a.project);
    auto project = session.project();
    if (!a.keep_boxes && !a.boxes.empty()) project.boxes.clear();
    const auto plot_name = a.plot.empty() ? project.active_plot : a.plot;
    for (const auto& text : a.boxes) {
        SelectionBox box;
        box.rect = parse_box(text);
        box.plot = plot_name;
        box.mode = a.mode.empty() ? default_select_mode(session.plot(plot_name).system) : select_mode_from_string(a.mode);
        project.boxes.push_back(box);
    }
    project.split_options.target_fraction = a.fraction;
    project.split_options.seed = a.seed;
    if (a.cap > 0) project.split_options.per_box_cap = a.cap;
    project.report.reset();
    session.replace(std::move(project));
    session.set_split_options(session.project().split_options);
    const auto& split = session.make_split();
    session.save(a.project);
    if (!a.validation_out.empty() || !a.training_out.empty()) {
        if (a.validation_out.empty() || a.training_out.empty()) {
            throw ConfigError("--validation-out and --training-out go together");
        }
        export_split(split, a.validation_out, a.training_out);
    }
    std::cout << "validation " << split.validation_ids.size() << " (" << split.from_boxes << " from boxes, "
              << split.random_fill << " random), training " << split.training_ids.size() << '\n';
    return 0;
}

struct EvaluateArgs {
    std::string project;
    int k = 10;
    std::uint64_t seed = 0;
    std::string out;
    bool save = false;
};

int run_evaluate(const EvaluateArgs& a, const CLI::App& cmd) {
    auto session = Session::open(a.project);
    auto config = session.project().experiment;
    if (cmd.count("--k")) config.k = a.k;
    if (cmd.count("--seed")) config.seed = a.seed;
    session.set_experiment(config);
    const auto& report = session.evaluate();
    std::cout << report_text(report);
    if (!a.out.empty()) write_file(a.out, json(report).dump(2) + "\n");
    if (a.save) session.save(a.project);
    return 0;
}

struct InitArgs {
    std::string data;
    std::string out = "project.json";
    std::string class_column = "class";
    std::vector<std::string> duplicates;
};

int run_init(const InitArgs& a) {
    Project p;
    p.dataset.path = std::filesystem::absolute(a.data).string();
    p.dataset.class_column = a.class_column;
    p.dataset.duplicate_attributes = a.duplicates;
    Session session(std::move(p), std::filesystem::current_path());
    session.save(a.out);
    std::cout << "wrote " << a.out << '\n';
    return 0;
}

HttpServer* active_server = nullptr;

void on_signal(int) {
    if (active_server) active_server->stop();
}

struct ServeArgs {
    std::string project;
    std::string data;
    std::string host = "127.0.0.1";
    int port = 8080;
};

int run_serve(const ServeArgs& a) {
    if (a.project.empty() == a.data.empty()) throw ConfigError("serve needs exactly one of --project or --data");
    Session session = a.project.empty() ? Session::create(a.data) : Session::open(a.project);
    Service service(std::move(session), a.project);
    HttpServer server(service);
    const int port = server.bind(a.host, a.port);
    if (port < 0) throw Error("cannot bind " + a.host + ":" + std::to_string(a.port));
    active_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cout << "listening on http://" << a.host << ':' << port << std::endl;
    server.listen_after_bind();
    active_server = nullptr;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"General Line Coordinates visual knowledge discovery"};
    app.require_subcommand(1);

    PlotArgs plot;
    auto* plot_cmd = app.add_subcommand("plot", "Render a dataset as SVG");
    plot_cmd->add_option("data", plot.data, "CSV file")->required()->check(CLI::ExistingFile);
    plot_cmd->add_option("--system", plot.system, "pc, spc, dsc1, dsc2 or ngon")->capture_default_str();
    plot_cmd->add_option("--order", plot.order, "Comma-separated attribute names or indices");
    plot_cmd->add_option("--weights", plot.weights, "Comma-separated DSC2 pair weights");
    plot_cmd->add_option("--separator", plot.separators, "Nonlinear separator ATTR:POSITION[:TARGET]");
    plot_cmd->add_option("--duplicate-attribute", plot.duplicates, "Append a copy of this attribute");
    plot_cmd->add_option("--class-column", plot.class_column)->capture_default_str();
    plot_cmd->add_option("--first-angle", plot.first_angle, "DSC1 first scaffold angle")->capture_default_str();
    plot_cmd->add_option("--rest-angle", plot.rest_angle, "DSC1 remaining scaffold angle")->capture_default_str();
    plot_cmd->add_flag("--bands", plot.bands, "Overlay hyperblock boundary bands");
    plot_cmd->add_option("--max-depth", plot.depth, "Tree depth for --bands, or 'none'")->capture_default_str();
    plot_cmd->add_option("--out,-o", plot.out, "SVG output")->capture_default_str();
    plot_cmd->add_option("--geometry", plot.geometry_out, "Also write vertex lists as JSON");

    BlocksArgs blocks;
    auto* blocks_cmd = app.add_subcommand("hyperblocks", "Print the hyperblock purity table");
    blocks_cmd->add_option("data", blocks.data, "CSV file")->required()->check(CLI::ExistingFile);
    blocks_cmd->add_option("--max-depth", blocks.depth, "Tree depth or 'none'")->capture_default_str();
    blocks_cmd->add_option("--format", blocks.format, "text, csv or json")->capture_default_str();
    blocks_cmd->add_option("--class-column", blocks.class_column)->capture_default_str();
    blocks_cmd->add_option("--duplicate-attribute", blocks.duplicates, "Append a copy of this attribute");
    blocks_cmd->add_flag("--rules", blocks.rules, "Also print the compiled rule series");

    SplitArgs split;
    auto* split_cmd = app.add_subcommand("split", "Build a worst-case split from selection boxes");
    split_cmd->add_option("project", split.project, "Project file")->required()->check(CLI::ExistingFile);
    split_cmd->add_option("--box", split.boxes, "Selection rectangle x0,y0,x1,y1 (repeatable)");
    split_cmd->add_option("--mode", split.mode, "bounding or clipping (default: per plot system)");
    split_cmd->add_option("--plot", split.plot, "Plot the boxes were drawn on");
    split_cmd->add_option("--fraction", split.fraction, "Validation fraction")->capture_default_str();
    split_cmd->add_option("--seed", split.seed, "Seed for random fill")->capture_default_str();
    split_cmd->add_option("--cap", split.cap, "Per-box cap on validation samples (0: none)");
    split_cmd->add_flag("--keep-boxes", split.keep_boxes, "Append to the stored boxes instead of replacing them");
    split_cmd->add_option("--validation-out", split.validation_out, "Write validation ids");
    split_cmd->add_option("--training-out", split.training_out, "Write training ids");

    EvaluateArgs evaluate;
    auto* eval_cmd = app.add_subcommand("evaluate", "Cross-validation and worst-split accuracy");
    eval_cmd->add_option("project", evaluate.project, "Project file")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--k", evaluate.k, "Fold count")->capture_default_str();
    eval_cmd->add_option("--seed", evaluate.seed, "Fold seed")->capture_default_str();
    eval_cmd->add_option("--out", evaluate.out, "Write the report as JSON");
    eval_cmd->add_flag("--save", evaluate.save, "Store the report in the project");

    InitArgs init;
    auto* init_cmd = app.add_subcommand("init", "Create a project for a dataset");
    init_cmd->add_option("data", init.data, "CSV file")->required()->check(CLI::ExistingFile);
    init_cmd->add_option("--out,-o", init.out)->capture_default_str();
    init_cmd->add_option("--class-column", init.class_column)->capture_default_str();
    init_cmd->add_option("--duplicate-attribute", init.duplicates, "Append a copy of this attribute");

    ServeArgs serve;
    auto* serve_cmd = app.add_subcommand("serve", "Start the HTTP/JSON service");
    serve_cmd->add_option("--project", serve.project, "Project file")->check(CLI::ExistingFile);
    serve_cmd->add_option("--data", serve.data, "CSV file for a fresh project")->check(CLI::ExistingFile);
    serve_cmd->add_option("--host", serve.host)->capture_default_str();
    serve_cmd->add_option("--port", serve.port)->capture_default_str()->check(CLI::Range(0, 65535));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*plot_cmd) return run_plot(plot);
        if (*blocks_cmd) return run_hyperblocks(blocks);
        if (*split_cmd) return run_split(split);
        if (*eval_cmd) return run_evaluate(evaluate, *eval_cmd);
        if (*init_cmd) return run_init(init);
        if (*serve_cmd) return run_serve(serve);
    } catch (const std::exception& e) {
        std::cerr << "glcviz: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
