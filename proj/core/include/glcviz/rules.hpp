#pragma once

#include "glcviz/classifiers.hpp"
#include "glcviz/dataset.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace glcviz {

enum class SeparatorOrientation { along_scaffold, vertical, horizontal };
enum class SeparatorProvenance { tree, user };

std::string to_string(SeparatorOrientation o);
SeparatorOrientation separator_orientation_from_string(std::string_view text);
std::string to_string(SeparatorProvenance p);
SeparatorProvenance separator_provenance_from_string(std::string_view text);

/// What happens to samples on one side of a separator.
struct SeparatorAction {
    enum class Kind { assign, pass };

    Kind kind = Kind::pass;
    int label = 0;         // assign: class index
    int next_stage = -1;   // pass: target stage, -1 for the following stage

    static SeparatorAction assign(int label) { return {Kind::assign, label, -1}; }
    static SeparatorAction pass(int next = -1) { return {Kind::pass, 0, next}; }
    friend bool operator==(const SeparatorAction&, const SeparatorAction&) = default;
};

/// Axis-aligned threshold on a plot. "Below" is value <= threshold.
struct Separator {
    std::size_t attribute = 0;
    double threshold = 0.0;  // scaled units
    SeparatorOrientation orientation = SeparatorOrientation::along_scaffold;
    SeparatorAction below;
    SeparatorAction above;
    SeparatorProvenance provenance = SeparatorProvenance::user;
    /// Same attribute as the stage that passes into it; can share its plot.
    bool mergeable_with_previous = false;
    /// Training class counts per side; empty for user-placed separators.
    std::vector<int> below_counts;
    std::vector<int> above_counts;

    friend bool operator==(const Separator&, const Separator&) = default;
};

/// Ordered plot series of separators. Each stage only sees the samples passed
/// to it; a sample passing beyond the last stage gets default_class.
struct RuleSeries {
    std::vector<Separator> stages;
    int default_class = 0;

    /// Throws ConfigError when a pass target does not move forward or a
    /// threshold leaves [0,1].
    void validate() const;
    /// Number of plots once mergeable stages share a plot.
    std::size_t plot_count() const;

    friend bool operator==(const RuleSeries&, const RuleSeries&) = default;
};

/// Depth-first linearisation of a tree: one stage per internal node. A leaf
/// child becomes an assign action; an internal child becomes a pass to the
/// stage that starts its subtree.
RuleSeries compile_tree_to_series(const DecisionTree& tree,
                                  SeparatorOrientation orientation = SeparatorOrientation::along_scaffold);

/// Builds a series of user-placed separators whose pass actions all forward
/// to the following stage.
RuleSeries linear_series(std::vector<Separator> stages, int default_class);

int classify_series(const RuleSeries& series, std::span<const double> x);

struct SeriesEvaluation {
    double accuracy = 0.0;
    std::vector<int> stage_captures;  // samples assigned at each stage
    int default_captures = 0;
};

SeriesEvaluation series_accuracy(const RuleSeries& series, const Dataset& data);

/// Keeps the first `stage_count` stages. Pass actions into dropped stages
/// become assignments to that side's training majority (or default_class
/// when the side has no counts).
RuleSeries truncate_series(const RuleSeries& series, std::size_t stage_count);

/// "stage 1: IF petal_width <= 0.8 THEN setosa ELSE stage 2" lines.
std::string rule_text(const RuleSeries& series, const Dataset& data);

}  // namespace glcviz
