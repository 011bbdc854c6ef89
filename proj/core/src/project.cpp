#include "glcviz/project.hpp"

#include "glcviz/error.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

namespace glcviz {

namespace fs = std::filesystem;

namespace {

template <typename T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

bool same_scale(double a, double b) { return std::abs(a - b) <= kScaleTolerance * std::max(1.0, std::abs(a)); }

}  // namespace

void to_json(json& j, const DatasetRef& d) {
    j = json{{"path", d.path},
             {"class_column", d.class_column},
             {"duplicate_attributes", d.duplicate_attributes},
             {"attributes", d.attributes},
             {"sample_count", d.sample_count}};
}

void from_json(const json& j, DatasetRef& d) {
    d = DatasetRef{};
    j.at("path").get_to(d.path);
    d.class_column = j.value("class_column", d.class_column);
    d.duplicate_attributes = j.value("duplicate_attributes", d.duplicate_attributes);
    if (j.contains("attributes")) j.at("attributes").get_to(d.attributes);
    d.sample_count = j.value("sample_count", std::size_t{0});
}

void to_json(json& j, const Project& p) {
    j = json{{"schema_version", p.schema_version},
             {"dataset", p.dataset},
             {"plots", p.plots},
             {"active_plot", p.active_plot},
             {"tree", p.tree},
             {"hyperblocks", optional_json(p.hyperblocks)},
             {"rules", optional_json(p.rules)},
             {"boxes", p.boxes},
             {"split_options", p.split_options},
             {"split", optional_json(p.split)},
             {"experiment", p.experiment},
             {"report", optional_json(p.report)}};
}

void from_json(const json& j, Project& p) {
    if (!j.is_object()) throw ConfigError("project must be a JSON object");
    if (!j.contains("schema_version")) throw ConfigError("project has no schema_version");
    const int version = j.at("schema_version").get<int>();
    if (version != kSchemaVersion) {
        throw ConfigError("unsupported schema_version " + std::to_string(version) + " (expected " +
                          std::to_string(kSchemaVersion) + ")");
    }
    p = Project{};
    p.schema_version = version;
    j.at("dataset").get_to(p.dataset);
    if (j.contains("plots")) {
        p.plots.clear();
        j.at("plots").get_to(p.plots);
    }
    p.active_plot = j.value("active_plot", p.plots.empty() ? std::string{} : p.plots.begin()->first);
    if (j.contains("tree")) j.at("tree").get_to(p.tree);
    p.hyperblocks = optional_from<HyperblockSet>(j, "hyperblocks");
    p.rules = optional_from<RuleSeries>(j, "rules");
    if (j.contains("boxes")) j.at("boxes").get_to(p.boxes);
    if (j.contains("split_options")) j.at("split_options").get_to(p.split_options);
    p.split = optional_from<WorstSplit>(j, "split");
    if (j.contains("experiment")) j.at("experiment").get_to(p.experiment);
    p.report = optional_from<ExperimentReport>(j, "report");
}

fs::path resolve_dataset_path(const std::string& path, const fs::path& base_dir) {
    if (path.empty()) throw ConfigError("dataset path is empty");
    const fs::path p(path);
    if (p.is_absolute()) {
        if (fs::exists(p)) return p;
        throw Error("dataset not found: " + path);
    }
    if (fs::exists(base_dir / p)) return base_dir / p;
    if (const char* env = std::getenv(kDataDirEnv); env && *env) {
        if (fs::exists(fs::path(env) / p)) return fs::path(env) / p;
    }
    throw Error("dataset not found: " + path + " (searched " + base_dir.string() + " and $" + kDataDirEnv + ")");
}

Dataset load_project_dataset(const DatasetRef& ref, const fs::path& base_dir) {
    Dataset data = load_dataset(resolve_dataset_path(ref.path, base_dir), ref.class_column);
    for (const auto& name : ref.duplicate_attributes) {
        const auto index = data.attribute_index(name);
        if (index < 0) throw ConfigError("cannot duplicate unknown attribute '" + name + "'");
        data = data.with_duplicated_attribute(static_cast<std::size_t>(index));
    }
    return data;
}

void validate_project(const Project& project, const Dataset& data) {
    const auto dims = data.dims();
    const auto n = data.size();
    const auto& ref = project.dataset;
    if (!ref.attributes.empty()) {
        if (ref.attributes.size() != dims) throw ConfigError("dataset attribute count differs from the project");
        for (std::size_t i = 0; i < dims; ++i) {
            const auto& a = ref.attributes[i];
            const auto& b = data.attributes()[i];
            if (a.name != b.name || !same_scale(a.min, b.min) || !same_scale(a.max, b.max)) {
                throw ConfigError("scaling metadata for attribute '" + b.name + "' no longer matches the dataset");
            }
        }
    }
    if (ref.sample_count != 0 && ref.sample_count != n) throw ConfigError("dataset sample count differs from the project");

    if (project.plots.empty()) throw ConfigError("project has no plots");
    if (!project.plots.count(project.active_plot)) throw ConfigError("unknown active plot '" + project.active_plot + "'");
    for (const auto& [name, config] : project.plots) {
        try {
            config.validate(dims);
        } catch (const Error& e) {
            throw ConfigError("plot '" + name + "': " + e.what());
        }
    }
    for (const auto& box : project.boxes) {
        if (!box.plot.empty() && !project.plots.count(box.plot)) {
            throw ConfigError("selection box refers to unknown plot '" + box.plot + "'");
        }
    }
    if (project.hyperblocks) {
        for (const auto& b : project.hyperblocks->blocks) {
            if (b.dims() != dims) throw ConfigError("hyperblock arity differs from the dataset");
            for (int id : b.member_ids) {
                if (id < 0 || static_cast<std::size_t>(id) >= n) throw ConfigError("hyperblock member id out of range");
            }
            if (b.majority_class < 0 || static_cast<std::size_t>(b.majority_class) >= data.class_count()) {
                throw ConfigError("hyperblock class out of range");
            }
            if (b.class_counts.size() != data.class_count()) throw ConfigError("hyperblock class counts differ from the dataset");
        }
    }
    if (project.rules) {
        project.rules->validate();
        if (project.rules->default_class < 0 ||
            static_cast<std::size_t>(project.rules->default_class) >= data.class_count()) {
            throw ConfigError("rule default class out of range");
        }
        const auto check_label = [&](const SeparatorAction& a) {
            if (a.kind == SeparatorAction::Kind::assign &&
                (a.label < 0 || static_cast<std::size_t>(a.label) >= data.class_count())) {
                throw ConfigError("rule assigns an unknown class");
            }
        };
        for (const auto& s : project.rules->stages) {
            if (s.attribute >= dims) throw ConfigError("rule refers to attribute out of range");
            check_label(s.below);
            check_label(s.above);
        }
    }
    if (project.split) {
        std::vector<char> seen(n, 0);
        for (const auto* side : {&project.split->validation_ids, &project.split->training_ids}) {
            for (int id : *side) {
                if (id < 0 || static_cast<std::size_t>(id) >= n) throw ConfigError("split id out of range");
                if (seen[static_cast<std::size_t>(id)]++) throw ConfigError("split id appears twice");
            }
        }
        if (project.split->validation_ids.size() + project.split->training_ids.size() != n) {
            throw ConfigError("split does not cover the dataset");
        }
    }
    if (project.experiment.k < 2 || static_cast<std::size_t>(project.experiment.k) > n) {
        throw ConfigError("experiment fold count out of range");
    }
}

Session::Session(Project project, fs::path base_dir)
    : project_(std::move(project)), base_dir_(std::move(base_dir)) {
    data_ = load_project_dataset(project_.dataset, base_dir_);
    validate_project(project_, data_);
}

Session Session::open(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw Error("cannot open project " + file.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("project " + file.string() + ": " + e.what());
    }
    Project p;
    try {
        p = j.get<Project>();
    } catch (const json::exception& e) {
        throw ConfigError("project " + file.string() + ": " + e.what());
    }
    const auto dir = file.has_parent_path() ? file.parent_path() : fs::path(".");
    return Session(std::move(p), dir);
}

Session Session::create(const fs::path& dataset_file, const std::string& class_column) {
    Project p;
    p.dataset.path = fs::absolute(dataset_file).string();
    p.dataset.class_column = class_column;
    Session s(std::move(p), fs::current_path());
    s.project_.dataset.attributes = s.data_.attributes();
    s.project_.dataset.sample_count = s.data_.size();
    return s;
}

void Session::replace(Project project) {
    if (project.dataset.path != project_.dataset.path || project.dataset.class_column != project_.dataset.class_column ||
        project.dataset.duplicate_attributes != project_.dataset.duplicate_attributes) {
        throw ConfigError("the dataset reference cannot change in a running session");
    }
    validate_project(project, data_);
    project_ = std::move(project);
}

std::string Session::plot_name(const std::string& name) const {
    const auto& key = name.empty() ? project_.active_plot : name;
    if (!project_.plots.count(key)) throw ConfigError("unknown plot '" + key + "'");
    return key;
}

const PlotConfig& Session::plot(const std::string& name) const { return project_.plots.at(plot_name(name)); }

void Session::set_plot(const std::string& name, PlotConfig config) {
    config.validate(data_.dims());
    project_.plots[name.empty() ? project_.active_plot : name] = std::move(config);
}

void Session::set_nonlinear(const std::string& name, std::map<std::size_t, NonlinearSeparator> nonlinear) {
    PlotConfig config = plot(name);
    config.nonlinear = std::move(nonlinear);
    set_plot(plot_name(name), std::move(config));
}

void Session::set_rules(std::optional<RuleSeries> rules) {
    Project next = project_;
    next.rules = std::move(rules);
    validate_project(next, data_);
    project_ = std::move(next);
}

HyperblockSet Session::hyperblocks() const {
    if (project_.hyperblocks) return *project_.hyperblocks;
    return extract_hyperblocks(fit_tree(data_, project_.tree), data_);
}

RuleSeries Session::rules() const {
    if (project_.rules) return *project_.rules;
    return compile_tree_to_series(fit_tree(data_, project_.tree));
}

PlotGeometry Session::geometry(const std::string& plot_name_arg, bool with_blocks) const {
    const auto& config = plot(plot_name_arg);
    auto g = map_plot(data_, config);
    if (with_blocks) g.overlays = hb_boundary_bands(hyperblocks(), config);
    return g;
}

std::vector<int> Session::select(const SelectionBox& box) const { return box_select(geometry(box.plot), box); }

void Session::add_box(SelectionBox box) {
    if (!box.plot.empty()) plot_name(box.plot);
    if (box.rect.degenerate()) throw RangeError("selection rectangle is degenerate");
    project_.boxes.push_back(std::move(box));
}

void Session::set_split_options(SplitOptions options) {
    if (!(options.target_fraction > 0.0 && options.target_fraction < 1.0)) {
        throw ConfigError("target fraction must lie in (0,1)");
    }
    project_.split_options = options;
}

void Session::set_experiment(ExperimentConfig config) {
    Project next = project_;
    next.experiment = std::move(config);
    validate_project(next, data_);
    project_ = std::move(next);
}

const WorstSplit& Session::make_split() {
    std::vector<std::vector<int>> selections;
    selections.reserve(project_.boxes.size());
    for (const auto& box : project_.boxes) selections.push_back(select(box));
    project_.split = build_worst_split(data_, selections, project_.split_options);
    return *project_.split;
}

const ExperimentReport& Session::evaluate() {
    if (!project_.split) make_split();
    project_.report = run_experiment(project_.experiment.classifiers, data_, *project_.split, project_.experiment.k,
                                     project_.experiment.seed);
    return *project_.report;
}

json Session::to_json() const {
    Project p = project_;
    p.dataset.attributes = data_.attributes();
    p.dataset.sample_count = data_.size();
    return p;
}

void Session::save(const fs::path& file) {
    const auto target_dir = fs::absolute(file.has_parent_path() ? file.parent_path() : fs::path("."));
    const fs::path ref(project_.dataset.path);
    if (!ref.is_absolute() && fs::exists(base_dir_ / ref)) {
        project_.dataset.path = fs::relative(fs::absolute(base_dir_ / ref), target_dir).generic_string();
        base_dir_ = target_dir;
    }
    project_.dataset.attributes = data_.attributes();
    project_.dataset.sample_count = data_.size();
    std::ofstream out(file);
    if (!out) throw Error("cannot write project " + file.string());
    out << json(project_).dump(2) << '\n';
    if (!out) throw Error("failed writing project " + file.string());
}

}  // namespace glcviz
