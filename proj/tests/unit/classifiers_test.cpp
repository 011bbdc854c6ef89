#include "fixtures.hpp"

#include "glcviz/classifiers.hpp"
#include "glcviz/error.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace glcviz {
namespace {

using testing::iris;
using testing::random_dataset;
using testing::toy;
using testing::wbc;

// Independent Gini oracle: impurity from a label multiset.
double gini_of(const std::vector<int>& labels) {
    if (labels.empty()) return 0.0;
    std::map<int, int> counts;
    for (int l : labels) ++counts[l];
    double s = 0.0;
    for (const auto& [l, c] : counts) s += std::pow(static_cast<double>(c) / labels.size(), 2);
    return 1.0 - s;
}

double best_gain_brute_force(const Dataset& d, const std::vector<int>& ids) {
    std::vector<int> all;
    for (int id : ids) all.push_back(d.sample(id).label);
    const double parent = gini_of(all);
    double best = -1.0;
    for (std::size_t a = 0; a < d.dims(); ++a) {
        std::set<double> values;
        for (int id : ids) values.insert(d.sample(id).scaled[a]);
        for (auto it = values.begin(); std::next(it) != values.end(); ++it) {
            const double t = (*it + *std::next(it)) / 2;
            std::vector<int> l, r;
            for (int id : ids) (d.sample(id).scaled[a] <= t ? l : r).push_back(d.sample(id).label);
            const double gain = parent - gini_of(l) * l.size() / ids.size() - gini_of(r) * r.size() / ids.size();
            best = std::max(best, gain);
        }
    }
    return best;
}

std::vector<std::vector<int>> ids_per_node(const DecisionTree& tree, const Dataset& d) {
    std::vector<std::vector<int>> out(tree.nodes().size());
    for (const auto& s : d.samples()) {
        int n = 0;
        while (true) {
            out[static_cast<std::size_t>(n)].push_back(s.id);
            const auto& node = tree.node(n);
            if (node.is_leaf()) break;
            n = s.scaled[static_cast<std::size_t>(node.attribute)] <= node.threshold ? node.left : node.right;
        }
    }
    return out;
}

TEST(ClassifierSpec, KindNames) {
    EXPECT_EQ(classifier_kind_from_string("decision-tree"), ClassifierKind::decision_tree);
    EXPECT_EQ(classifier_kind_from_string("knn"), ClassifierKind::knn);
    EXPECT_EQ(classifier_kind_from_string("gaussian-nb"), ClassifierKind::gaussian_nb);
    EXPECT_THROW(classifier_kind_from_string("svm"), ConfigError);
    EXPECT_EQ(to_string(ClassifierKind::gaussian_nb), "gaussian-nb");
}

TEST(ClassifierSpec, Validation) {
    ClassifierSpec s;
    s.kind = ClassifierKind::knn;
    s.k = 0;
    EXPECT_THROW(s.validate(), ConfigError);
    s.kind = ClassifierKind::decision_tree;
    s.tree.max_depth = 0;
    EXPECT_THROW(s.validate(), ConfigError);
    s.kind = ClassifierKind::gaussian_nb;
    s.variance_floor = 0;
    EXPECT_THROW(s.validate(), ConfigError);
    EXPECT_EQ(ClassifierSpec{}.label(), "DT");
}

TEST(DecisionTree, SingleClassIsOneLeaf) {
    const auto d = toy({{0.1, 0.2}, {0.5, 0.9}, {0.3, 0.3}}, {"a", "a", "a"});
    const auto tree = fit_tree(d);
    ASSERT_EQ(tree.nodes().size(), 1u);
    EXPECT_TRUE(tree.node(0).is_leaf());
    EXPECT_EQ(tree.predict(std::vector<double>{0.7, 0.1}), 0);
    EXPECT_EQ(tree.predict(std::vector<double>{1.0, 1.0}), 0);
}

TEST(DecisionTree, FourPointSetSplitsOnAttributeZero) {
    const auto d = toy({{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {"A", "A", "B", "B"});
    // Oracle: attribute 0 separates perfectly (gain 0.5), attribute 1 not at all (gain 0).
    const std::vector<int> ids{0, 1, 2, 3};
    EXPECT_DOUBLE_EQ(best_gain_brute_force(d, ids), 0.5);
    const auto tree = fit_tree(d);
    ASSERT_EQ(tree.nodes().size(), 3u);
    EXPECT_EQ(tree.node(0).attribute, 0);
    EXPECT_DOUBLE_EQ(tree.node(0).threshold, 0.5);
}

TEST(DecisionTree, EmptyTrainingSetThrows) {
    const std::vector<int> none;
    EXPECT_THROW(fit_tree(iris(), none), Error);
}

TEST(DecisionTree, IrisFirstSplitIsolatesSetosa) {
    TreeParams p;
    p.max_depth = 5;
    const auto tree = fit_tree(iris(), p);
    const auto& root = tree.node(0);
    EXPECT_EQ(iris().attributes()[static_cast<std::size_t>(root.attribute)].name, "petal_width");
    const auto& left = tree.node(root.left);
    EXPECT_TRUE(left.is_leaf());
    EXPECT_EQ(left.class_counts, (std::vector<int>{50, 0, 0}));
}

TEST(DecisionTree, ThresholdsLieBetweenObservedValues) {
    for (const auto* d : {&iris(), &wbc()}) {
        const auto tree = fit_tree(*d);
        const auto per_node = ids_per_node(tree, *d);
        for (std::size_t n = 0; n < tree.nodes().size(); ++n) {
            const auto& node = tree.nodes()[n];
            if (node.is_leaf()) continue;
            double below = -1, above = 2;
            for (int id : per_node[n]) {
                const double v = d->sample(id).scaled[static_cast<std::size_t>(node.attribute)];
                if (v <= node.threshold) below = std::max(below, v);
                else above = std::min(above, v);
            }
            EXPECT_LT(below, node.threshold);
            EXPECT_GT(above, node.threshold);
            EXPECT_DOUBLE_EQ(node.threshold, (below + above) / 2);
        }
    }
}

TEST(DecisionTree, LeafCountsSumToTrainingSize) {
    const auto tree = fit_tree(wbc());
    int total = 0;
    for (int leaf : tree.leaves()) total += tree.node(leaf).sample_count();
    EXPECT_EQ(total, 683);
    const auto per_node = ids_per_node(tree, wbc());
    for (std::size_t n = 0; n < tree.nodes().size(); ++n) {
        EXPECT_EQ(static_cast<std::size_t>(tree.nodes()[n].sample_count()), per_node[n].size());
    }
}

TEST(DecisionTree, UnlimitedDepthFitsTrainingDataExactly) {
    TreeParams p;
    p.max_depth = kUnlimitedDepth;
    const auto tree = fit_tree(iris(), p);
    const auto ids = iris().all_ids();
    EXPECT_DOUBLE_EQ(accuracy(Model{tree}, iris(), ids), 1.0);
}

TEST(DecisionTree, ChosenSplitHasMaximalGiniGain) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto d = random_dataset(seed, 60, 3, 3);
        TreeParams p;
        p.max_depth = kUnlimitedDepth;
        const auto tree = fit_tree(d, p);
        const auto per_node = ids_per_node(tree, d);
        for (std::size_t n = 0; n < tree.nodes().size(); ++n) {
            const auto& node = tree.nodes()[n];
            if (node.is_leaf() || per_node[n].size() > 50) continue;
            std::vector<int> all, l, r;
            for (int id : per_node[n]) {
                const int label = d.sample(id).label;
                all.push_back(label);
                (d.sample(id).scaled[static_cast<std::size_t>(node.attribute)] <= node.threshold ? l : r).push_back(label);
            }
            const double m = static_cast<double>(all.size());
            const double chosen = gini_of(all) - gini_of(l) * l.size() / m - gini_of(r) * r.size() / m;
            EXPECT_GE(chosen, best_gain_brute_force(d, per_node[n]) - 1e-12) << "seed " << seed << " node " << n;
        }
    }
}

TEST(DecisionTree, RespectsDepthAndLeafSize) {
    TreeParams p;
    p.max_depth = 2;
    p.min_samples_leaf = 10;
    const auto tree = fit_tree(wbc(), p);
    EXPECT_LE(tree.depth(), 2);
    for (int leaf : tree.leaves()) EXPECT_GE(tree.node(leaf).sample_count(), 10);
}

TEST(DecisionTree, ArityMismatchThrows) {
    const auto tree = fit_tree(iris());
    EXPECT_THROW(tree.predict(std::vector<double>{0.1, 0.2}), DimensionError);
}

TEST(Knn, OneNeighbourMemorisesTrainingData) {
    const auto ids = iris().all_ids();
    const auto model = fit_knn(iris(), ids, 1);
    // Iris has duplicate points only within a class, so 1-NN is exact.
    for (const auto& s : iris().samples()) EXPECT_EQ(model.predict(s.scaled), s.label);
}

TEST(Knn, VoteTieGoesToLowestClass) {
    const auto d = toy({{0.0}, {1.0}}, {"a", "b"});
    const auto ids = d.all_ids();
    const auto model = fit_knn(d, ids, 2);
    EXPECT_EQ(model.predict(std::vector<double>{0.9}), 0);
}

TEST(Knn, PermutationInvariant) {
    const auto& d = wbc();
    auto ids = d.all_ids();
    const auto a = fit_knn(d, ids, 5);
    std::reverse(ids.begin(), ids.end());
    const auto b = fit_knn(d, ids, 5);
    for (std::size_t i = 0; i < d.size(); i += 7) {
        EXPECT_EQ(a.predict(d.sample(i).scaled), b.predict(d.sample(i).scaled));
    }
}

TEST(Knn, InvalidK) {
    const auto ids = iris().all_ids();
    EXPECT_THROW(fit_knn(iris(), ids, 0), ConfigError);
}

TEST(NaiveBayes, PriorsOnWbc) {
    const auto ids = wbc().all_ids();
    const auto model = fit_nb(wbc(), ids);
    EXPECT_DOUBLE_EQ(model.priors()[0], 444.0 / 683.0);
    EXPECT_DOUBLE_EQ(model.priors()[1], 239.0 / 683.0);
}

TEST(NaiveBayes, QueryAtClassMeanPicksThatClass) {
    // Two 1-D Gaussians centred at 0.2 and 0.8 with equal spread and priors.
    const auto d = toy({{0.1}, {0.2}, {0.3}, {0.7}, {0.8}, {0.9}}, {"lo", "lo", "lo", "hi", "hi", "hi"});
    const auto ids = d.all_ids();
    const auto model = fit_nb(d, ids);
    // Hand-computed: means 0.2/0.8, population variance 0.02/3 (scaled by 1/0.8^2).
    const double scale = 0.8;
    EXPECT_NEAR(model.means()[0][0], (0.2 - 0.1) / scale, 1e-12);
    EXPECT_NEAR(model.variances()[0][0], (0.02 / 3) / (scale * scale), 1e-12);
    EXPECT_EQ(model.predict(std::vector<double>{model.means()[0][0]}), 0);
    EXPECT_EQ(model.predict(std::vector<double>{model.means()[1][0]}), 1);
}

TEST(NaiveBayes, ExactPosteriorTieGoesToLowestClass) {
    // Dyadic values keep every intermediate exact: both classes have variance
    // 1/64 and the query sits 3/8 from either mean.
    const auto d = toy({{0}, {1}, {3}, {4}}, {"a", "a", "b", "b"});
    const auto ids = d.all_ids();
    const auto model = fit_nb(d, ids);
    const auto lp = model.log_posteriors(std::vector<double>{0.5});
    EXPECT_EQ(lp[0], lp[1]);
    EXPECT_EQ(model.predict(std::vector<double>{0.5}), 0);
}

TEST(NaiveBayes, ConstantAttributeUsesVarianceFloor) {
    const auto d = toy({{0.1, 5}, {0.2, 5}, {0.8, 5}, {0.9, 5}}, {"a", "a", "b", "b"});
    const auto ids = d.all_ids();
    const auto model = fit_nb(d, ids, 1e-9);
    EXPECT_DOUBLE_EQ(model.variances()[0][1], 1e-9);
    for (double v : model.log_posteriors(std::vector<double>{0.15, 0.0})) EXPECT_TRUE(std::isfinite(v));
}

TEST(NaiveBayes, EmptyClassNamed) {
    const auto d = toy({{0.1}, {0.9}}, {"present", "absent"});
    const std::vector<int> only_first{0};
    try {
        fit_nb(d, only_first);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("absent"), std::string::npos);
    }
}

TEST(Model, DispatchAndArity) {
    const auto ids = iris().all_ids();
    for (auto kind : {ClassifierKind::decision_tree, ClassifierKind::knn, ClassifierKind::gaussian_nb}) {
        ClassifierSpec spec;
        spec.kind = kind;
        const auto model = fit(spec, iris(), ids);
        EXPECT_GT(accuracy(model, iris(), ids), 0.9);
        EXPECT_THROW(predict(model, std::vector<double>{0.5}), DimensionError);
    }
}

}  // namespace
}  // namespace glcviz
