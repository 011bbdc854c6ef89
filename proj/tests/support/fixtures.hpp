#pragma once

#include "glcviz/dataset.hpp"

#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace glcviz::testing {

inline std::filesystem::path data_path(const std::string& file) { return std::filesystem::path(GLCVIZ_TEST_DATA_DIR) / file; }

inline const Dataset& iris() {
    static const Dataset d = load_dataset(data_path("iris.csv"));
    return d;
}

inline const Dataset& wbc() {
    static const Dataset d = load_dataset(data_path("wbc.csv"));
    return d;
}

/// Uniform raw values in [0, 10) rounded to one decimal so ties occur.
inline Dataset random_dataset(std::uint64_t seed, std::size_t n, std::size_t dims, int classes) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> value(0, 99);
    std::uniform_int_distribution<int> label(0, classes - 1);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < dims; ++i) names.push_back("a" + std::to_string(i));
    std::vector<std::vector<double>> rows(n, std::vector<double>(dims));
    std::vector<std::string> labels(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (auto& v : rows[r]) v = value(rng) / 10.0;
        labels[r] = "c" + std::to_string(label(rng));
    }
    return Dataset::from_rows("random", names, rows, labels);
}

inline Dataset toy(const std::vector<std::vector<double>>& rows, const std::vector<std::string>& labels) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < rows.at(0).size(); ++i) names.push_back("x" + std::to_string(i));
    return Dataset::from_rows("toy", names, rows, labels);
}

}  // namespace glcviz::testing
