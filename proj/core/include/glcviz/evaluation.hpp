#pragma once

#include "glcviz/classifiers.hpp"
#include "glcviz/dataset.hpp"
#include "glcviz/splits.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace glcviz {

/// Stratified k folds of sample ids. Each class is shuffled with `seed` and
/// dealt round-robin, continuing the fold cursor across classes, so fold
/// sizes differ by at most one within every class.
std::vector<std::vector<int>> stratified_folds(const Dataset& data, int k, std::uint64_t seed);

struct CvResult {
    std::vector<double> fold_accuracies;  // percent
    double average = 0.0;
    double max = 0.0;
    double min = 0.0;
};

/// Throws ConfigError when k < 2 or k > N.
CvResult kfold_cv(const ClassifierSpec& spec, const Dataset& data, int k, std::uint64_t seed);

/// Trains on the split's training ids, returns percent accuracy on its
/// validation ids. Throws Error when either side is empty.
double worst_split_eval(const ClassifierSpec& spec, const Dataset& data, const WorstSplit& split);

struct ExperimentRow {
    ClassifierSpec spec;
    double cv_average = 0.0;
    double cv_max = 0.0;
    double cv_min = 0.0;
    double worst_split_accuracy = 0.0;
};

struct ExperimentReport {
    std::string dataset;
    int k = 10;
    std::uint64_t seed = 0;
    std::size_t validation_size = 0;
    std::size_t training_size = 0;
    std::vector<ExperimentRow> rows;
};

struct ExperimentConfig {
    std::vector<ClassifierSpec> classifiers;
    int k = 10;
    std::uint64_t seed = 0;

    /// DT, kNN and Gaussian NB with default hyperparameters.
    static ExperimentConfig defaults();
};

ExperimentReport run_experiment(const std::vector<ClassifierSpec>& specs, const Dataset& data,
                                const WorstSplit& split, int k, std::uint64_t seed);

/// Aligned table with one decimal per accuracy.
std::string report_text(const ExperimentReport& report);

/// Rounds to one decimal, the precision reports carry.
double round1(double value);

}  // namespace glcviz
