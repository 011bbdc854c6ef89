#include "fixtures.hpp"

#include "glcviz/error.hpp"
#include "glcviz/evaluation.hpp"
#include "glcviz/project.hpp"
#include "glcviz/serialization.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <numeric>
#include <set>

namespace glcviz {
namespace {

using testing::wbc;

ClassifierSpec spec_of(ClassifierKind kind) {
    ClassifierSpec s;
    s.kind = kind;
    return s;
}

const Session& wbc_session() {
    static const Session s = Session::open(testing::data_path("wbc-project.json"));
    return s;
}

WorstSplit wbc_box_split() {
    const auto& s = wbc_session();
    return build_worst_split(s.data(), {s.select(s.project().boxes.at(0))}, s.project().split_options);
}

TEST(Folds, PartitionAndStratify) {
    for (int k : {2, 3, 10}) {
        const auto folds = stratified_folds(wbc(), k, 7);
        ASSERT_EQ(folds.size(), static_cast<std::size_t>(k));
        std::vector<int> all;
        for (const auto& f : folds) all.insert(all.end(), f.begin(), f.end());
        std::sort(all.begin(), all.end());
        EXPECT_EQ(all, wbc().all_ids());
        for (int c = 0; c < 2; ++c) {
            int lo = 1 << 30, hi = 0;
            for (const auto& f : folds) {
                const int n = static_cast<int>(std::count_if(f.begin(), f.end(), [&](int id) {
                    return wbc().sample(static_cast<std::size_t>(id)).label == c;
                }));
                lo = std::min(lo, n);
                hi = std::max(hi, n);
            }
            EXPECT_LE(hi - lo, 1);
        }
    }
}

TEST(Folds, RejectBadK) {
    const auto d = testing::random_dataset(1, 5, 2, 2);
    EXPECT_THROW(stratified_folds(d, 1, 0), ConfigError);
    EXPECT_THROW(stratified_folds(d, 6, 0), ConfigError);
    EXPECT_THROW(kfold_cv(spec_of(ClassifierKind::knn), d, 0, 0), ConfigError);
    EXPECT_NO_THROW(stratified_folds(d, 5, 0));
}

TEST(Kfold, SeparableDataIsPerfect) {
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    for (int i = 0; i < 40; ++i) {
        rows.push_back({i < 20 ? 0.1 * (i % 5) : 5.0 + 0.1 * (i % 5), 1.0});
        labels.push_back(i < 20 ? "a" : "b");
    }
    const auto r = kfold_cv(spec_of(ClassifierKind::decision_tree), testing::toy(rows, labels), 10, 0);
    EXPECT_EQ(r.average, 100.0);
    EXPECT_EQ(r.max, 100.0);
    EXPECT_EQ(r.min, 100.0);
}

TEST(Kfold, LeaveOneOutMatchesBruteForce) {
    const auto d = testing::toy({{0.0, 1.0}, {0.2, 0.1}, {0.4, 0.9}, {0.6, 0.2}, {0.8, 0.7}, {1.0, 0.3}},
                                {"a", "b", "a", "b", "a", "b"});
    for (auto kind : {ClassifierKind::decision_tree, ClassifierKind::knn, ClassifierKind::gaussian_nb}) {
        auto spec = spec_of(kind);
        spec.k = 3;
        double hits = 0;
        for (int left_out = 0; left_out < 6; ++left_out) {
            std::vector<int> train;
            for (int i = 0; i < 6; ++i) {
                if (i != left_out) train.push_back(i);
            }
            const auto model = fit(spec, d, train);
            hits += predict(model, d.sample(static_cast<std::size_t>(left_out)).scaled) ==
                    d.sample(static_cast<std::size_t>(left_out)).label;
        }
        const auto r = kfold_cv(spec, d, 6, 11);
        EXPECT_NEAR(r.average, 100.0 * hits / 6.0, 1e-9) << to_string(kind);
        for (double a : r.fold_accuracies) EXPECT_TRUE(a == 0.0 || a == 100.0);
    }
}

TEST(Kfold, WbcTreeInBand) {
    const auto r = kfold_cv(spec_of(ClassifierKind::decision_tree), wbc(), 10, 0);
    EXPECT_GE(r.average, 92.0);
    EXPECT_LE(r.average, 98.0);
    EXPECT_LE(r.min, r.average);
    EXPECT_GE(r.max, r.average);
}

TEST(WorstSplitEval, MemorisingClassifierOnTrainingCopy) {
    const auto d = testing::random_dataset(5, 60, 3, 3);
    WorstSplit s;
    s.training_ids = d.all_ids();
    s.validation_ids = {0, 5, 17, 33, 59};
    auto spec = spec_of(ClassifierKind::knn);
    spec.k = 1;
    // Duplicate raw rows with different labels would break memorisation; the fixture has none at 3 dims.
    EXPECT_EQ(worst_split_eval(spec, d, s), 100.0);
    s.validation_ids.clear();
    EXPECT_THROW(worst_split_eval(spec, d, s), Error);
}

TEST(WorstSplitEval, WbcBoxSplitWellBelowCv) {
    const auto split = wbc_box_split();
    ASSERT_EQ(split.validation_ids.size(), 68u);
    for (auto kind : {ClassifierKind::decision_tree, ClassifierKind::knn, ClassifierKind::gaussian_nb}) {
        const auto spec = spec_of(kind);
        const double cv = kfold_cv(spec, wbc_session().data(), 10, 0).average;
        EXPECT_LT(worst_split_eval(spec, wbc_session().data(), split), cv - 5.0) << to_string(kind);
    }
}

TEST(WorstSplitEval, BoxSplitNoBetterThanRandomSplits) {
    const auto& data = wbc_session().data();
    const auto nb = spec_of(ClassifierKind::gaussian_nb);
    const double box = worst_split_eval(nb, data, wbc_box_split());
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SplitOptions o;
        o.seed = seed;
        const auto random = build_worst_split(data, {}, o);
        ASSERT_EQ(random.random_fill, 68u);
        EXPECT_LE(box, worst_split_eval(nb, data, random)) << "seed " << seed;
    }
}

TEST(Experiment, SingleSpecTinyDataset) {
    const auto d = testing::random_dataset(2, 12, 2, 2);
    const auto split = build_worst_split(d, {}, {});
    const auto r = run_experiment({spec_of(ClassifierKind::knn)}, d, split, 2, 3);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_EQ(r.k, 2);
    EXPECT_EQ(r.seed, 3u);
    EXPECT_EQ(r.validation_size, 1u);
    EXPECT_EQ(r.training_size, 11u);
    EXPECT_EQ(r.rows[0].cv_average, round1(r.rows[0].cv_average));
    EXPECT_THROW(run_experiment({}, d, split, 2, 3), ConfigError);
}

TEST(Experiment, DeterministicReports) {
    const auto split = wbc_box_split();
    const auto specs = ExperimentConfig::defaults().classifiers;
    const auto a = run_experiment(specs, wbc_session().data(), split, 10, 0);
    const auto b = run_experiment(specs, wbc_session().data(), split, 10, 0);
    EXPECT_EQ(json(a).dump(), json(b).dump());
    EXPECT_EQ(report_text(a), report_text(b));
}

TEST(Experiment, WbcMatchesGolden) {
    std::ifstream in(std::filesystem::path(GLCVIZ_TEST_GOLDEN_DIR) / "wbc-report.json");
    const auto golden = json::parse(in);
    const auto specs = ExperimentConfig::defaults().classifiers;
    const auto report = run_experiment(specs, wbc_session().data(), wbc_box_split(), 10, 0);
    EXPECT_EQ(json(report), golden) << json(report).dump(2);
    for (const auto& row : report.rows) EXPECT_LT(row.worst_split_accuracy, row.cv_average);
}

TEST(Report, TextTable) {
    ExperimentReport r;
    r.k = 10;
    r.validation_size = 68;
    r.training_size = 615;
    ExperimentRow row;
    row.spec = spec_of(ClassifierKind::decision_tree);
    row.cv_average = 95.25;
    row.cv_max = 98.6;
    row.cv_min = 89.9;
    row.worst_split_accuracy = 80.9;
    r.rows.push_back(row);
    const auto text = report_text(r);
    EXPECT_NE(text.find("10-fold cross validation (seed 0) and worst split (68 validation / 615 training)"),
              std::string::npos);
    EXPECT_NE(text.find("DT         95.2     98.6     89.9         80.9"), std::string::npos) << text;
}

TEST(Round, OneDecimal) {
    EXPECT_EQ(round1(80.88), 80.9);
    EXPECT_EQ(round1(100.0), 100.0);
    EXPECT_EQ(round1(94.14), 94.1);
}

}  // namespace
}  // namespace glcviz
