#include "glcviz/rules.hpp"

#include "glcviz/error.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace glcviz {

namespace {

int majority_or(const std::vector<int>& counts, int fallback) {
    if (counts.empty() || std::all_of(counts.begin(), counts.end(), [](int c) { return c == 0; })) return fallback;
    return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

int target_of(const SeparatorAction& a, std::size_t stage) {
    return a.next_stage >= 0 ? a.next_stage : static_cast<int>(stage) + 1;
}

class SeriesCompiler {
public:
    SeriesCompiler(const DecisionTree& tree, SeparatorOrientation orientation)
        : tree_(tree), orientation_(orientation) {}

    void emit(int node_index, std::vector<Separator>& stages) {
        const auto& node = tree_.node(node_index);
        const auto& left = tree_.node(node.left);
        const auto& right = tree_.node(node.right);
        const std::size_t here = stages.size();

        Separator s;
        s.attribute = static_cast<std::size_t>(node.attribute);
        s.threshold = node.threshold;
        s.orientation = orientation_;
        s.provenance = SeparatorProvenance::tree;
        s.below_counts = left.class_counts;
        s.above_counts = right.class_counts;
        s.below = left.is_leaf() ? SeparatorAction::assign(left.majority) : SeparatorAction::pass();
        s.above = right.is_leaf() ? SeparatorAction::assign(right.majority) : SeparatorAction::pass();
        stages.push_back(std::move(s));

        if (!left.is_leaf()) {
            stages[here].below = SeparatorAction::pass(static_cast<int>(stages.size()));
            emit(node.left, stages);
        }
        if (!right.is_leaf()) {
            stages[here].above = SeparatorAction::pass(static_cast<int>(stages.size()));
            emit(node.right, stages);
        }
    }

private:
    const DecisionTree& tree_;
    SeparatorOrientation orientation_;
};

void mark_mergeable(std::vector<Separator>& stages) {
    for (std::size_t i = 0; i < stages.size(); ++i) stages[i].mergeable_with_previous = false;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        for (const auto* a : {&stages[i].below, &stages[i].above}) {
            if (a->kind != SeparatorAction::Kind::pass) continue;
            const auto t = static_cast<std::size_t>(target_of(*a, i));
            if (t < stages.size() && stages[t].attribute == stages[i].attribute) {
                stages[t].mergeable_with_previous = true;
            }
        }
    }
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

std::string to_string(SeparatorOrientation o) {
    switch (o) {
        case SeparatorOrientation::along_scaffold: return "along-scaffold";
        case SeparatorOrientation::vertical: return "vertical";
        case SeparatorOrientation::horizontal: return "horizontal";
    }
    return "unknown";
}

SeparatorOrientation separator_orientation_from_string(std::string_view text) {
    if (text == "along-scaffold") return SeparatorOrientation::along_scaffold;
    if (text == "vertical") return SeparatorOrientation::vertical;
    if (text == "horizontal") return SeparatorOrientation::horizontal;
    throw ConfigError("unknown separator orientation '" + std::string(text) + "'");
}

std::string to_string(SeparatorProvenance p) { return p == SeparatorProvenance::tree ? "tree" : "user"; }

SeparatorProvenance separator_provenance_from_string(std::string_view text) {
    if (text == "tree") return SeparatorProvenance::tree;
    if (text == "user") return SeparatorProvenance::user;
    throw ConfigError("unknown separator provenance '" + std::string(text) + "'");
}

void RuleSeries::validate() const {
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const auto& s = stages[i];
        if (!(s.threshold >= 0.0 && s.threshold <= 1.0)) throw ConfigError("separator threshold outside [0,1]");
        for (const auto* a : {&s.below, &s.above}) {
            if (a->kind == SeparatorAction::Kind::pass && a->next_stage >= 0 &&
                a->next_stage <= static_cast<int>(i)) {
                throw ConfigError("stage " + std::to_string(i + 1) + " passes backwards");
            }
        }
    }
}

std::size_t RuleSeries::plot_count() const {
    return static_cast<std::size_t>(std::count_if(stages.begin(), stages.end(),
                                                  [](const Separator& s) { return !s.mergeable_with_previous; }));
}

RuleSeries compile_tree_to_series(const DecisionTree& tree, SeparatorOrientation orientation) {
    RuleSeries series;
    const auto& root = tree.node(0);
    series.default_class = root.majority;
    if (root.is_leaf()) return series;
    SeriesCompiler(tree, orientation).emit(0, series.stages);
    mark_mergeable(series.stages);
    return series;
}

RuleSeries linear_series(std::vector<Separator> stages, int default_class) {
    RuleSeries series;
    series.stages = std::move(stages);
    series.default_class = default_class;
    for (auto& s : series.stages) {
        if (s.below.kind == SeparatorAction::Kind::pass) s.below.next_stage = -1;
        if (s.above.kind == SeparatorAction::Kind::pass) s.above.next_stage = -1;
    }
    mark_mergeable(series.stages);
    series.validate();
    return series;
}

namespace {

// Returns (label, stage index that assigned it or -1 for default).
std::pair<int, int> walk(const RuleSeries& series, std::span<const double> x) {
    std::size_t i = 0;
    while (i < series.stages.size()) {
        const auto& s = series.stages[i];
        if (s.attribute >= x.size()) throw DimensionError("separator attribute beyond sample arity");
        const auto& action = x[s.attribute] <= s.threshold ? s.below : s.above;
        if (action.kind == SeparatorAction::Kind::assign) return {action.label, static_cast<int>(i)};
        const int next = target_of(action, i);
        if (next <= static_cast<int>(i)) throw ConfigError("stage passes backwards");
        i = static_cast<std::size_t>(next);
    }
    return {series.default_class, -1};
}

}  // namespace

int classify_series(const RuleSeries& series, std::span<const double> x) { return walk(series, x).first; }

SeriesEvaluation series_accuracy(const RuleSeries& series, const Dataset& data) {
    SeriesEvaluation e;
    e.stage_captures.assign(series.stages.size(), 0);
    std::size_t correct = 0;
    for (const auto& s : data.samples()) {
        const auto [label, stage] = walk(series, s.scaled);
        if (stage < 0) {
            ++e.default_captures;
        } else {
            ++e.stage_captures[static_cast<std::size_t>(stage)];
        }
        if (label == s.label) ++correct;
    }
    e.accuracy = data.size() ? static_cast<double>(correct) / static_cast<double>(data.size()) : 0.0;
    return e;
}

RuleSeries truncate_series(const RuleSeries& series, std::size_t stage_count) {
    RuleSeries out;
    out.default_class = series.default_class;
    const std::size_t keep = std::min(stage_count, series.stages.size());
    out.stages.assign(series.stages.begin(), series.stages.begin() + static_cast<std::ptrdiff_t>(keep));
    for (std::size_t i = 0; i < out.stages.size(); ++i) {
        auto& s = out.stages[i];
        const auto cut = [&](SeparatorAction& a, const std::vector<int>& counts) {
            if (a.kind == SeparatorAction::Kind::pass && target_of(a, i) >= static_cast<int>(keep)) {
                a = SeparatorAction::assign(majority_or(counts, series.default_class));
            }
        };
        cut(s.below, s.below_counts);
        cut(s.above, s.above_counts);
    }
    mark_mergeable(out.stages);
    return out;
}

std::string rule_text(const RuleSeries& series, const Dataset& data) {
    std::ostringstream out;
    const auto describe = [&](const SeparatorAction& a, std::size_t i) {
        if (a.kind == SeparatorAction::Kind::assign) return data.class_name(a.label);
        const int t = target_of(a, i);
        if (t >= static_cast<int>(series.stages.size())) return data.class_name(series.default_class);
        return "stage " + std::to_string(t + 1);
    };
    for (std::size_t i = 0; i < series.stages.size(); ++i) {
        const auto& s = series.stages[i];
        const auto& attr = data.attributes().at(s.attribute);
        out << "stage " << i + 1;
        if (s.mergeable_with_previous) out << " (shares previous plot)";
        out << ": IF " << attr.name << " <= " << format_value(unscale(s.threshold, attr.min, attr.max))
            << " THEN " << describe(s.below, i) << " ELSE " << describe(s.above, i) << '\n';
    }
    out << "default: " << data.class_name(series.default_class) << '\n';
    return out.str();
}

}  // namespace glcviz
