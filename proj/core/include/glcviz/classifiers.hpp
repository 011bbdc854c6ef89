#pragma once

#include "glcviz/dataset.hpp"

#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace glcviz {

enum class ClassifierKind { decision_tree, knn, gaussian_nb };

std::string to_string(ClassifierKind kind);
/// Accepts "decision-tree", "knn", "gaussian-nb". Throws ConfigError otherwise.
ClassifierKind classifier_kind_from_string(std::string_view text);

inline constexpr int kUnlimitedDepth = std::numeric_limits<int>::max();

struct TreeParams {
    int max_depth = 8;  // number of splits on the longest path
    int min_samples_leaf = 1;
};

struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::decision_tree;
    TreeParams tree;
    int k = 5;
    double variance_floor = 1e-9;

    /// Throws ConfigError when a hyperparameter is invalid for `kind`.
    void validate() const;
    /// Short display name used in reports ("DT", "KNN", "NB").
    std::string label() const;
};

/// Binary tree node. Leaves have attribute == -1.
///
/// Routing: value <= threshold goes left, value > threshold goes right.
struct TreeNode {
    int attribute = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int depth = 0;
    std::vector<int> class_counts;  // training samples routed here
    int majority = 0;

    bool is_leaf() const { return attribute < 0; }
    int sample_count() const;
};

class DecisionTree {
public:
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    const TreeNode& node(int index) const { return nodes_.at(static_cast<std::size_t>(index)); }
    std::size_t dims() const { return dims_; }
    std::size_t class_count() const { return class_count_; }
    const TreeParams& params() const { return params_; }

    /// Index of the leaf reached by `x`.
    int leaf_for(std::span<const double> x) const;
    int predict(std::span<const double> x) const;

    /// Leaf node indices in depth-first (left before right) order.
    std::vector<int> leaves() const;
    int depth() const;

private:
    friend DecisionTree fit_tree(const Dataset&, std::span<const int>, const TreeParams&);

    void check_arity(std::span<const double> x) const;

    std::vector<TreeNode> nodes_;
    std::size_t dims_ = 0;
    std::size_t class_count_ = 0;
    TreeParams params_;
};

/// Greedy Gini CART on the scaled values of the samples in `ids`.
///
/// Thresholds are midpoints between adjacent distinct values. Among splits
/// with equal gain the higher attribute index wins, then the lower threshold.
/// Throws Error on an empty training set.
DecisionTree fit_tree(const Dataset& data, std::span<const int> ids, const TreeParams& params = {});
DecisionTree fit_tree(const Dataset& data, const TreeParams& params = {});

/// Euclidean kNN over scaled values. Neighbours at equal distance are ordered
/// by sample id; vote ties go to the lowest class index.
class KnnModel {
public:
    int predict(std::span<const double> x) const;
    int k() const { return k_; }
    std::size_t dims() const { return dims_; }

private:
    friend KnnModel fit_knn(const Dataset&, std::span<const int>, int);

    int k_ = 5;
    std::size_t dims_ = 0;
    std::size_t class_count_ = 0;
    std::vector<double> points_;  // row-major, ids.size() x dims_
    std::vector<int> labels_;
    std::vector<int> ids_;
};

KnnModel fit_knn(const Dataset& data, std::span<const int> ids, int k = 5);

/// Gaussian naive Bayes with per-class, per-attribute variance floored at
/// `variance_floor`.
class NaiveBayesModel {
public:
    int predict(std::span<const double> x) const;
    /// Unnormalised log posterior per class.
    std::vector<double> log_posteriors(std::span<const double> x) const;

    const std::vector<double>& priors() const { return priors_; }
    const std::vector<std::vector<double>>& means() const { return means_; }
    const std::vector<std::vector<double>>& variances() const { return variances_; }
    std::size_t dims() const { return dims_; }

private:
    friend NaiveBayesModel fit_nb(const Dataset&, std::span<const int>, double);

    std::size_t dims_ = 0;
    std::vector<double> priors_;
    std::vector<std::vector<double>> means_;
    std::vector<std::vector<double>> variances_;
};

/// Throws Error naming the class when a dataset class has no training sample.
NaiveBayesModel fit_nb(const Dataset& data, std::span<const int> ids, double variance_floor = 1e-9);

using Model = std::variant<DecisionTree, KnnModel, NaiveBayesModel>;

Model fit(const ClassifierSpec& spec, const Dataset& data, std::span<const int> ids);
/// Throws DimensionError on arity mismatch.
int predict(const Model& model, std::span<const double> x);

/// Fraction of `ids` whose prediction matches the label.
double accuracy(const Model& model, const Dataset& data, std::span<const int> ids);

}  // namespace glcviz
