#include "glcviz/evaluation.hpp"

#include "glcviz/error.hpp"
#include "glcviz/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numeric>
#include <sstream>

namespace glcviz {

std::vector<std::vector<int>> stratified_folds(const Dataset& data, int k, std::uint64_t seed) {
    if (k < 2) throw ConfigError("fold count must be >= 2");
    if (static_cast<std::size_t>(k) > data.size()) {
        throw ConfigError("fold count " + std::to_string(k) + " exceeds sample count " + std::to_string(data.size()));
    }
    std::vector<std::vector<int>> by_class(data.class_count());
    for (const auto& s : data.samples()) by_class[static_cast<std::size_t>(s.label)].push_back(s.id);

    std::mt19937_64 rng(seed);
    std::vector<std::vector<int>> folds(static_cast<std::size_t>(k));
    std::size_t cursor = 0;
    for (auto& ids : by_class) {
        seeded_shuffle(ids, rng);
        for (int id : ids) folds[cursor++ % folds.size()].push_back(id);
    }
    for (auto& f : folds) std::sort(f.begin(), f.end());
    return folds;
}

CvResult kfold_cv(const ClassifierSpec& spec, const Dataset& data, int k, std::uint64_t seed) {
    spec.validate();
    const auto folds = stratified_folds(data, k, seed);

    std::vector<std::future<double>> pending;
    pending.reserve(folds.size());
    for (std::size_t f = 0; f < folds.size(); ++f) {
        pending.push_back(std::async(std::launch::async, [&, f] {
            std::vector<int> train;
            for (std::size_t g = 0; g < folds.size(); ++g) {
                if (g != f) train.insert(train.end(), folds[g].begin(), folds[g].end());
            }
            std::sort(train.begin(), train.end());
            const auto model = fit(spec, data, train);
            return 100.0 * accuracy(model, data, folds[f]);
        }));
    }

    CvResult r;
    for (auto& p : pending) r.fold_accuracies.push_back(p.get());
    r.average = std::accumulate(r.fold_accuracies.begin(), r.fold_accuracies.end(), 0.0) /
                static_cast<double>(r.fold_accuracies.size());
    const auto [lo, hi] = std::minmax_element(r.fold_accuracies.begin(), r.fold_accuracies.end());
    r.min = *lo;
    r.max = *hi;
    return r;
}

double worst_split_eval(const ClassifierSpec& spec, const Dataset& data, const WorstSplit& split) {
    if (split.training_ids.empty()) throw Error("worst split has an empty training side");
    if (split.validation_ids.empty()) throw Error("worst split has an empty validation side");
    const auto model = fit(spec, data, split.training_ids);
    return 100.0 * accuracy(model, data, split.validation_ids);
}

ExperimentConfig ExperimentConfig::defaults() {
    ExperimentConfig c;
    for (auto kind : {ClassifierKind::decision_tree, ClassifierKind::knn, ClassifierKind::gaussian_nb}) {
        ClassifierSpec spec;
        spec.kind = kind;
        c.classifiers.push_back(spec);
    }
    return c;
}

double round1(double value) { return std::round(value * 10.0) / 10.0; }

ExperimentReport run_experiment(const std::vector<ClassifierSpec>& specs, const Dataset& data,
                                const WorstSplit& split, int k, std::uint64_t seed) {
    if (specs.empty()) throw ConfigError("experiment needs at least one classifier");
    ExperimentReport report;
    report.dataset = data.name();
    report.k = k;
    report.seed = seed;
    report.validation_size = split.validation_ids.size();
    report.training_size = split.training_ids.size();
    for (const auto& spec : specs) {
        const auto cv = kfold_cv(spec, data, k, seed);
        ExperimentRow row;
        row.spec = spec;
        row.cv_average = round1(cv.average);
        row.cv_max = round1(cv.max);
        row.cv_min = round1(cv.min);
        row.worst_split_accuracy = round1(worst_split_eval(spec, data, split));
        report.rows.push_back(row);
    }
    return report;
}

std::string report_text(const ExperimentReport& report) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%d-fold cross validation (seed %llu) and worst split (%zu validation / %zu training)\n",
                  report.k, static_cast<unsigned long long>(report.seed), report.validation_size,
                  report.training_size);
    out << line;
    std::snprintf(line, sizeof line, "%-6s %8s %8s %8s %12s\n", "Model", "Average", "Max", "Min", "Worst-Split");
    out << line;
    for (const auto& r : report.rows) {
        std::snprintf(line, sizeof line, "%-6s %8.1f %8.1f %8.1f %12.1f\n", r.spec.label().c_str(), r.cv_average,
                      r.cv_max, r.cv_min, r.worst_split_accuracy);
        out << line;
    }
    return out.str();
}

}  // namespace glcviz
