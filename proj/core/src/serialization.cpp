#include "glcviz/serialization.hpp"

#include "glcviz/error.hpp"

namespace glcviz {

void to_json(json& j, const Attribute& a) { j = json{{"name", a.name}, {"min", a.min}, {"max", a.max}}; }

void from_json(const json& j, Attribute& a) {
    j.at("name").get_to(a.name);
    j.at("min").get_to(a.min);
    j.at("max").get_to(a.max);
}

void to_json(json& j, const TreeParams& p) {
    j = json{{"max_depth", p.max_depth == kUnlimitedDepth ? json(nullptr) : json(p.max_depth)},
             {"min_samples_leaf", p.min_samples_leaf}};
}

void from_json(const json& j, TreeParams& p) {
    p = TreeParams{};
    if (j.contains("max_depth")) {
        const auto& d = j.at("max_depth");
        p.max_depth = d.is_null() ? kUnlimitedDepth : d.get<int>();
    }
    p.min_samples_leaf = j.value("min_samples_leaf", p.min_samples_leaf);
}

void to_json(json& j, const ClassifierSpec& s) {
    j = json{{"kind", to_string(s.kind)}};
    switch (s.kind) {
        case ClassifierKind::decision_tree: j.update(json(s.tree)); break;
        case ClassifierKind::knn: j["k"] = s.k; break;
        case ClassifierKind::gaussian_nb: j["variance_floor"] = s.variance_floor; break;
    }
}

void from_json(const json& j, ClassifierSpec& s) {
    s = ClassifierSpec{};
    s.kind = classifier_kind_from_string(j.at("kind").get<std::string>());
    if (s.kind == ClassifierKind::decision_tree) s.tree = j.get<TreeParams>();
    s.k = j.value("k", s.k);
    s.variance_floor = j.value("variance_floor", s.variance_floor);
    s.validate();
}

void to_json(json& j, const Point& p) { j = json::array({p.x, p.y}); }

void from_json(const json& j, Point& p) {
    if (!j.is_array() || j.size() != 2) throw ConfigError("point must be [x, y]");
    p = {j[0].get<double>(), j[1].get<double>()};
}

void to_json(json& j, const Rect& r) { j = json::array({r.x_min, r.y_min, r.x_max, r.y_max}); }

void from_json(const json& j, Rect& r) {
    if (!j.is_array() || j.size() != 4) throw ConfigError("rectangle must be [x_min, y_min, x_max, y_max]");
    r = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

void to_json(json& j, const NonlinearSeparator& s) { j = json{{"position", s.position}, {"target", s.target}}; }

void from_json(const json& j, NonlinearSeparator& s) {
    s.position = j.at("position").get<double>();
    s.target = j.value("target", 0.5);
    s.validate();
}

void to_json(json& j, const NgonVertex& v) {
    j = json{{"attribute_order", v.attribute_order}, {"pair_weights", v.pair_weights}};
}

void from_json(const json& j, NgonVertex& v) {
    v.attribute_order = j.value("attribute_order", std::vector<std::size_t>{});
    v.pair_weights = j.value("pair_weights", std::vector<double>{});
}

void to_json(json& j, const PlotConfig& c) {
    json nonlinear = json::array();
    for (const auto& [attr, sep] : c.nonlinear) {
        json s = sep;
        s["attribute"] = attr;
        nonlinear.push_back(std::move(s));
    }
    j = json{{"system", to_string(c.system)},
             {"attribute_order", c.attribute_order},
             {"first_angle", c.first_angle},
             {"rest_angle", c.rest_angle},
             {"pair_weights", c.pair_weights},
             {"nonlinear", std::move(nonlinear)},
             {"ngon_vertices", c.ngon_vertices},
             {"ngon_radius", c.ngon_radius},
             {"panel_spacing", c.panel_spacing}};
}

void from_json(const json& j, PlotConfig& c) {
    c = PlotConfig{};
    if (j.contains("system")) c.system = coordinate_system_from_string(j.at("system").get<std::string>());
    c.attribute_order = j.value("attribute_order", c.attribute_order);
    c.first_angle = j.value("first_angle", c.first_angle);
    c.rest_angle = j.value("rest_angle", c.rest_angle);
    c.pair_weights = j.value("pair_weights", c.pair_weights);
    if (j.contains("nonlinear")) {
        for (const auto& s : j.at("nonlinear")) {
            c.nonlinear[s.at("attribute").get<std::size_t>()] = s.get<NonlinearSeparator>();
        }
    }
    c.ngon_vertices = j.value("ngon_vertices", c.ngon_vertices);
    c.ngon_radius = j.value("ngon_radius", c.ngon_radius);
    c.panel_spacing = j.value("panel_spacing", c.panel_spacing);
}

void to_json(json& j, const Polyline& l) {
    j = json{{"id", l.sample_id}, {"label", l.label}, {"copy", l.copy}, {"vertices", l.vertices}};
}

void to_json(json& j, const BlockOverlay& o) {
    j = json{{"block", o.block},
             {"label", o.label},
             {"copy", o.copy},
             {"lower", o.lower.vertices},
             {"upper", o.upper.vertices},
             {"boxes", o.boxes}};
}

void to_json(json& j, const PlotGeometry& g) {
    json axes = json::array();
    for (const auto& a : g.axes) axes.push_back({{"from", a.from}, {"to", a.to}, {"label", a.label}});
    j = json{{"system", to_string(g.system)}, {"copies", g.copies},     {"origins", g.origins},
             {"bounds", g.bounds()},          {"axes", std::move(axes)}, {"polylines", g.polylines},
             {"overlays", g.overlays}};
}

void to_json(json& j, const Hyperblock& b) {
    j = json{{"lower", b.lower},
             {"upper", b.upper},
             {"center", b.center()},
             {"lengths", b.lengths()},
             {"member_ids", b.member_ids},
             {"class_counts", b.class_counts},
             {"purity", b.purity},
             {"majority_class", b.majority_class},
             {"leaf", b.leaf},
             {"path_attributes", b.path_attributes}};
}

void from_json(const json& j, Hyperblock& b) {
    b = Hyperblock{};
    j.at("lower").get_to(b.lower);
    j.at("upper").get_to(b.upper);
    if (b.lower.size() != b.upper.size()) throw ConfigError("hyperblock bounds differ in arity");
    j.at("member_ids").get_to(b.member_ids);
    j.at("class_counts").get_to(b.class_counts);
    j.at("purity").get_to(b.purity);
    j.at("majority_class").get_to(b.majority_class);
    b.leaf = j.value("leaf", -1);
    b.path_attributes = j.value("path_attributes", std::vector<int>{});
}

void to_json(json& j, const HyperblockSet& s) {
    j = json{{"source", s.source}, {"dataset", s.dataset}, {"blocks", s.blocks}};
}

void from_json(const json& j, HyperblockSet& s) {
    s.source = j.value("source", "");
    s.dataset = j.value("dataset", "");
    j.at("blocks").get_to(s.blocks);
}

void to_json(json& j, const PurityRow& r) {
    j = json{{"block", r.block},
             {"sample_count", r.sample_count},
             {"pct_of_dataset", r.pct_of_dataset},
             {"pct_purity", r.pct_purity},
             {"majority_class", r.majority_class},
             {"pct_of_class", r.pct_of_class},
             {"path_attributes", r.path_attributes}};
}

json purity_table_json(const std::vector<PurityRow>& rows, const Dataset& data) {
    json out = json::array();
    for (const auto& r : rows) {
        json row = r;
        row["name"] = "HB" + std::to_string(r.block + 1);
        row["class"] = data.class_name(r.majority_class);
        out.push_back(std::move(row));
    }
    return out;
}

void to_json(json& j, const SeparatorAction& a) {
    if (a.kind == SeparatorAction::Kind::assign) {
        j = json{{"assign", a.label}};
    } else {
        j = json{{"pass", a.next_stage}};
    }
}

void from_json(const json& j, SeparatorAction& a) {
    if (j.contains("assign")) {
        a = SeparatorAction::assign(j.at("assign").get<int>());
    } else if (j.contains("pass")) {
        a = SeparatorAction::pass(j.at("pass").get<int>());
    } else {
        throw ConfigError("separator action needs 'assign' or 'pass'");
    }
}

void to_json(json& j, const Separator& s) {
    j = json{{"attribute", s.attribute},
             {"threshold", s.threshold},
             {"orientation", to_string(s.orientation)},
             {"below", s.below},
             {"above", s.above},
             {"provenance", to_string(s.provenance)},
             {"mergeable_with_previous", s.mergeable_with_previous},
             {"below_counts", s.below_counts},
             {"above_counts", s.above_counts}};
}

void from_json(const json& j, Separator& s) {
    s = Separator{};
    j.at("attribute").get_to(s.attribute);
    j.at("threshold").get_to(s.threshold);
    s.orientation = separator_orientation_from_string(j.value("orientation", "along-scaffold"));
    j.at("below").get_to(s.below);
    j.at("above").get_to(s.above);
    s.provenance = separator_provenance_from_string(j.value("provenance", "user"));
    s.mergeable_with_previous = j.value("mergeable_with_previous", false);
    s.below_counts = j.value("below_counts", std::vector<int>{});
    s.above_counts = j.value("above_counts", std::vector<int>{});
}

void to_json(json& j, const RuleSeries& s) {
    j = json{{"stages", s.stages}, {"default_class", s.default_class}, {"plot_count", s.plot_count()}};
}

void from_json(const json& j, RuleSeries& s) {
    j.at("stages").get_to(s.stages);
    j.at("default_class").get_to(s.default_class);
    s.validate();
}

void to_json(json& j, const SelectionBox& b) {
    j = json{{"rect", b.rect}, {"mode", to_string(b.mode)}, {"plot", b.plot}};
}

void from_json(const json& j, SelectionBox& b) {
    j.at("rect").get_to(b.rect);
    b.plot = j.value("plot", "");
    b.mode = select_mode_from_string(j.value("mode", "bounding"));
    if (b.rect.degenerate()) throw RangeError("selection rectangle is degenerate");
}

void to_json(json& j, const SplitOptions& o) {
    j = json{{"target_fraction", o.target_fraction},
             {"seed", o.seed},
             {"per_box_cap", o.per_box_cap ? json(*o.per_box_cap) : json(nullptr)}};
}

void from_json(const json& j, SplitOptions& o) {
    o = SplitOptions{};
    o.target_fraction = j.value("target_fraction", o.target_fraction);
    o.seed = j.value("seed", o.seed);
    if (j.contains("per_box_cap") && !j.at("per_box_cap").is_null()) o.per_box_cap = j.at("per_box_cap").get<std::size_t>();
}

void to_json(json& j, const WorstSplit& s) {
    j = json{{"validation_ids", s.validation_ids},
             {"training_ids", s.training_ids},
             {"target_fraction", s.target_fraction},
             {"seed", s.seed},
             {"per_box_cap", s.per_box_cap ? json(*s.per_box_cap) : json(nullptr)},
             {"from_boxes", s.from_boxes},
             {"random_fill", s.random_fill}};
}

void from_json(const json& j, WorstSplit& s) {
    s = WorstSplit{};
    j.at("validation_ids").get_to(s.validation_ids);
    j.at("training_ids").get_to(s.training_ids);
    s.target_fraction = j.value("target_fraction", s.target_fraction);
    s.seed = j.value("seed", s.seed);
    if (j.contains("per_box_cap") && !j.at("per_box_cap").is_null()) s.per_box_cap = j.at("per_box_cap").get<std::size_t>();
    s.from_boxes = j.value("from_boxes", std::size_t{0});
    s.random_fill = j.value("random_fill", std::size_t{0});
}

void to_json(json& j, const ExperimentRow& r) {
    j = json{{"model", r.spec.label()},
             {"classifier", r.spec},
             {"cv_average", r.cv_average},
             {"cv_max", r.cv_max},
             {"cv_min", r.cv_min},
             {"worst_split_accuracy", r.worst_split_accuracy}};
}

void from_json(const json& j, ExperimentRow& r) {
    j.at("classifier").get_to(r.spec);
    j.at("cv_average").get_to(r.cv_average);
    j.at("cv_max").get_to(r.cv_max);
    j.at("cv_min").get_to(r.cv_min);
    j.at("worst_split_accuracy").get_to(r.worst_split_accuracy);
}

void to_json(json& j, const ExperimentReport& r) {
    j = json{{"dataset", r.dataset},
             {"k", r.k},
             {"seed", r.seed},
             {"validation_size", r.validation_size},
             {"training_size", r.training_size},
             {"rows", r.rows}};
}

void from_json(const json& j, ExperimentReport& r) {
    r.dataset = j.value("dataset", "");
    j.at("k").get_to(r.k);
    j.at("seed").get_to(r.seed);
    r.validation_size = j.value("validation_size", std::size_t{0});
    r.training_size = j.value("training_size", std::size_t{0});
    j.at("rows").get_to(r.rows);
}

void to_json(json& j, const ExperimentConfig& c) {
    j = json{{"classifiers", c.classifiers}, {"k", c.k}, {"seed", c.seed}};
}

void from_json(const json& j, ExperimentConfig& c) {
    c = ExperimentConfig::defaults();
    if (j.contains("classifiers")) j.at("classifiers").get_to(c.classifiers);
    c.k = j.value("k", c.k);
    c.seed = j.value("seed", c.seed);
    if (c.classifiers.empty()) throw ConfigError("experiment needs at least one classifier");
    if (c.k < 2) throw ConfigError("fold count must be >= 2");
}

}  // namespace glcviz
