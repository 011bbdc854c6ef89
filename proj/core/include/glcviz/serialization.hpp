#pragma once

// JSON forms of the domain types. Parsing throws nlohmann::json exceptions
// for structurally malformed input and glcviz::ConfigError for bad values.

#include "glcviz/classifiers.hpp"
#include "glcviz/evaluation.hpp"
#include "glcviz/glc.hpp"
#include "glcviz/hyperblocks.hpp"
#include "glcviz/rules.hpp"
#include "glcviz/splits.hpp"

#include <nlohmann/json.hpp>

namespace glcviz {

using json = nlohmann::json;

void to_json(json& j, const Attribute& a);
void from_json(const json& j, Attribute& a);

void to_json(json& j, const TreeParams& p);
void from_json(const json& j, TreeParams& p);
void to_json(json& j, const ClassifierSpec& s);
void from_json(const json& j, ClassifierSpec& s);

void to_json(json& j, const Point& p);
void from_json(const json& j, Point& p);
void to_json(json& j, const Rect& r);
void from_json(const json& j, Rect& r);

void to_json(json& j, const NonlinearSeparator& s);
void from_json(const json& j, NonlinearSeparator& s);
void to_json(json& j, const NgonVertex& v);
void from_json(const json& j, NgonVertex& v);
void to_json(json& j, const PlotConfig& c);
void from_json(const json& j, PlotConfig& c);

void to_json(json& j, const Polyline& l);
void to_json(json& j, const BlockOverlay& o);
void to_json(json& j, const PlotGeometry& g);

void to_json(json& j, const Hyperblock& b);
void from_json(const json& j, Hyperblock& b);
void to_json(json& j, const HyperblockSet& s);
void from_json(const json& j, HyperblockSet& s);
void to_json(json& j, const PurityRow& r);

void to_json(json& j, const SeparatorAction& a);
void from_json(const json& j, SeparatorAction& a);
void to_json(json& j, const Separator& s);
void from_json(const json& j, Separator& s);
void to_json(json& j, const RuleSeries& s);
void from_json(const json& j, RuleSeries& s);

void to_json(json& j, const SelectionBox& b);
void from_json(const json& j, SelectionBox& b);
void to_json(json& j, const SplitOptions& o);
void from_json(const json& j, SplitOptions& o);
void to_json(json& j, const WorstSplit& s);
void from_json(const json& j, WorstSplit& s);

void to_json(json& j, const ExperimentRow& r);
void from_json(const json& j, ExperimentRow& r);
void to_json(json& j, const ExperimentReport& r);
void from_json(const json& j, ExperimentReport& r);
void to_json(json& j, const ExperimentConfig& c);
void from_json(const json& j, ExperimentConfig& c);

/// Purity table with class names resolved.
json purity_table_json(const std::vector<PurityRow>& rows, const Dataset& data);

}  // namespace glcviz
