#pragma once

// Project file: one dataset plus everything an analyst builds on it.
//
//   {
//     "schema_version": 1,
//     "dataset": {"path": "wbc.csv", "class_column": "class",
//                 "duplicate_attributes": ["mitoses"], "attributes": [...]},
//     "plots": {"main": PlotConfig, ...},
//     "active_plot": "main",
//     "tree": {"max_depth": 3, "min_samples_leaf": 1},
//     "hyperblocks": HyperblockSet | null,
//     "rules": RuleSeries | null,
//     "boxes": [SelectionBox, ...],
//     "split_options": SplitOptions,
//     "split": WorstSplit | null,
//     "experiment": ExperimentConfig,
//     "report": ExperimentReport | null
//   }
//
// Relative dataset paths resolve against the project file's directory, then
// against $GLCVIZ_DATA_DIR.

#include "glcviz/dataset.hpp"
#include "glcviz/evaluation.hpp"
#include "glcviz/glc.hpp"
#include "glcviz/hyperblocks.hpp"
#include "glcviz/rules.hpp"
#include "glcviz/serialization.hpp"
#include "glcviz/splits.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace glcviz {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kDataDirEnv = "GLCVIZ_DATA_DIR";

struct DatasetRef {
    std::string path;
    std::string class_column = "class";
    /// Appended in order as "<name>_dup" columns, e.g. to make the arity even.
    std::vector<std::string> duplicate_attributes;
    /// Scaling metadata recorded at save time; empty until first resolved.
    std::vector<Attribute> attributes;
    std::size_t sample_count = 0;
};

struct Project {
    int schema_version = kSchemaVersion;
    DatasetRef dataset;
    std::map<std::string, PlotConfig> plots{{"main", PlotConfig{}}};
    std::string active_plot = "main";
    TreeParams tree;
    std::optional<HyperblockSet> hyperblocks;
    std::optional<RuleSeries> rules;
    std::vector<SelectionBox> boxes;
    SplitOptions split_options;
    std::optional<WorstSplit> split;
    ExperimentConfig experiment = ExperimentConfig::defaults();
    std::optional<ExperimentReport> report;
};

void to_json(json& j, const DatasetRef& d);
void from_json(const json& j, DatasetRef& d);
/// Throws ConfigError when schema_version is missing or differs.
void to_json(json& j, const Project& p);
void from_json(const json& j, Project& p);

/// Resolution order: absolute path, `base_dir / path`, $GLCVIZ_DATA_DIR / path.
/// Throws Error naming the path when none exists.
std::filesystem::path resolve_dataset_path(const std::string& path, const std::filesystem::path& base_dir);

/// Loads the CSV and appends the duplicated attributes.
Dataset load_project_dataset(const DatasetRef& ref, const std::filesystem::path& base_dir);

/// Throws ConfigError on the first unresolved cross-reference: unknown plot
/// names, plot configs that do not fit the dataset, block or rule arity,
/// split ids outside the dataset, or scaling metadata that no longer matches.
void validate_project(const Project& project, const Dataset& data);

/// A project bound to its loaded dataset. Results are pure functions of the
/// project state; nothing is cached outside `project()`.
class Session {
public:
    Session(Project project, std::filesystem::path base_dir);

    static Session open(const std::filesystem::path& file);
    /// New project on a dataset file with default settings.
    static Session create(const std::filesystem::path& dataset_file, const std::string& class_column = "class");

    const Project& project() const { return project_; }
    const Dataset& data() const { return data_; }
    const std::filesystem::path& base_dir() const { return base_dir_; }

    /// Replaces the project after validating it against the dataset (the
    /// dataset reference itself must not change).
    void replace(Project project);

    const PlotConfig& plot(const std::string& name = {}) const;
    void set_plot(const std::string& name, PlotConfig config);
    /// Replaces the nonlinear separators of the named plot.
    void set_nonlinear(const std::string& name, std::map<std::size_t, NonlinearSeparator> nonlinear);
    void set_rules(std::optional<RuleSeries> rules);

    /// Stored blocks, or blocks of a tree fit to the whole dataset.
    HyperblockSet hyperblocks() const;
    /// Stored series, or the tree compiled to a series.
    RuleSeries rules() const;

    PlotGeometry geometry(const std::string& plot_name = {}, bool with_blocks = false) const;
    std::vector<int> select(const SelectionBox& box) const;

    /// Builds the split from the stored boxes and options and stores it.
    const WorstSplit& make_split();
    /// Runs the configured experiment on the stored split (built first when
    /// absent) and stores the report.
    const ExperimentReport& evaluate();

    void add_box(SelectionBox box);
    void set_split_options(SplitOptions options);
    void set_experiment(ExperimentConfig config);

    /// Refreshes scaling metadata and writes pretty JSON. Relative dataset
    /// paths are rewritten against the target directory.
    void save(const std::filesystem::path& file);
    json to_json() const;

private:
    std::string plot_name(const std::string& name) const;

    Project project_;
    std::filesystem::path base_dir_;
    Dataset data_;
};

}  // namespace glcviz
