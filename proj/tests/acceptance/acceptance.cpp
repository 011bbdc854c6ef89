// One PASS/FAIL line per acceptance criterion; exit status is the FAIL count.

#include "fixtures.hpp"

#include "glcviz/evaluation.hpp"
#include "glcviz/glc.hpp"
#include "glcviz/hyperblocks.hpp"
#include "glcviz/project.hpp"
#include "glcviz/render.hpp"
#include "glcviz/rules.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

namespace {

using namespace glcviz;
using Clock = std::chrono::steady_clock;

// Pinned tolerances and budgets.
constexpr int kIrisSetosa = 50;
constexpr int kIrisVersicolor = 47;
constexpr int kIrisVirginica = 43;
constexpr int kIrisCountTol = 2;
constexpr int kIrisMinCovered = 138;
constexpr int kIrisBlocks = 8;
constexpr int kIrisBlocksTol = 1;
constexpr double kIrisBudgetMs = 1000;
constexpr int kLosslessSamples = 1000;
constexpr int kLosslessConfigs = 20;
constexpr double kLosslessTol = 1e-9;
constexpr double kLosslessBudgetMs = 5000;
constexpr int kPartitionDatasets = 100;
constexpr double kCvLow = 92.0;
constexpr double kCvHigh = 98.0;
constexpr double kWorstGap = 5.0;
constexpr double kDtWorstLow = 75.0;
constexpr double kDtWorstHigh = 90.0;
constexpr double kTableBudgetMs = 30000;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void run(const char* name, const std::function<Outcome()>& check) {
    const auto start = Clock::now();
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("threw: ") + e.what()};
    }
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    std::printf("%s %s: %s (%.0f ms)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), ms);
    failures += !o.pass;
}

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

HyperblockSet iris_blocks() {
    TreeParams p;
    p.max_depth = kUnlimitedDepth;
    return extract_hyperblocks(fit_tree(testing::iris(), p), testing::iris());
}

Outcome iris_hyperblocks() {
    const auto start = Clock::now();
    const auto& data = testing::iris();
    const auto set = iris_blocks();
    const double ms = elapsed_ms(start);
    bool pure = true;
    for (const auto& b : set.blocks) pure = pure && b.purity == 1.0;
    bool disjoint = true;
    for (std::size_t i = 0; i < set.blocks.size(); ++i) {
        for (std::size_t j = i + 1; j < set.blocks.size(); ++j) {
            disjoint = disjoint && !separating_attributes(set.blocks[i], set.blocks[j]).empty();
        }
    }
    const auto order = set.by_size();
    const auto count_of = [&](std::size_t rank, const char* cls) {
        const auto& b = set.blocks[order.at(rank)];
        return b.majority_class == data.class_index(cls) ? b.size() : -1;
    };
    const int se = count_of(0, "setosa");
    const int ve = count_of(1, "versicolor");
    const int vi = count_of(2, "virginica");
    const int covered = se + ve + vi;
    const int n = static_cast<int>(set.blocks.size());
    const bool ok = pure && disjoint && se == kIrisSetosa && std::abs(ve - kIrisVersicolor) <= kIrisCountTol &&
                    std::abs(vi - kIrisVirginica) <= kIrisCountTol && covered >= kIrisMinCovered &&
                    std::abs(n - kIrisBlocks) <= kIrisBlocksTol && ms < kIrisBudgetMs;
    return {ok, fmt("blocks=%d top3=%d/%d/%d covered=%d pure=%d disjoint=%d fit=%.1fms", n, se, ve, vi, covered, pure,
                    disjoint, ms)};
}

PlotConfig random_config(std::mt19937_64& rng, std::size_t dims, CoordinateSystem system) {
    std::uniform_real_distribution<double> u(0.02, 0.98);
    PlotConfig c;
    c.system = system;
    c.attribute_order.resize(dims);
    for (std::size_t i = 0; i < dims; ++i) c.attribute_order[i] = i;
    std::shuffle(c.attribute_order.begin(), c.attribute_order.end(), rng);
    c.first_angle = -90.0 * u(rng);
    c.rest_angle = -90.0 * u(rng);
    for (std::size_t j = 0; j < dims / 2; ++j) c.pair_weights.push_back(0.05 + 1.5 * u(rng));
    for (std::size_t a = 0; a < dims; ++a) {
        if (u(rng) < 0.5) c.nonlinear[a] = NonlinearSeparator{u(rng), u(rng)};
    }
    return c;
}

Outcome losslessness() {
    const auto start = Clock::now();
    const auto data = testing::random_dataset(2024, kLosslessSamples, 10, 2);
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int t = 0; t < kLosslessConfigs; ++t) {
        const auto c = random_config(rng, 10, t % 2 ? CoordinateSystem::dsc2 : CoordinateSystem::dsc1);
        const auto g = map_plot(data, c);
        const auto back = reconstruct(g, c, 10);
        for (std::size_t i = 0; i < data.size(); ++i) {
            for (std::size_t a = 0; a < 10; ++a) worst = std::max(worst, std::abs(back[i][a] - data.sample(i).scaled[a]));
        }
    }
    const double ms = elapsed_ms(start);
    return {worst < kLosslessTol && ms < kLosslessBudgetMs,
            fmt("samples=%d configs=%d max_abs_error=%.3g", kLosslessSamples, kLosslessConfigs, worst)};
}

Outcome wbc_ingestion() {
    const auto& d = testing::wbc();
    const auto counts = d.class_counts();
    const int benign = counts.at(static_cast<std::size_t>(d.class_index("benign")));
    const int malignant = counts.at(static_cast<std::size_t>(d.class_index("malignant")));
    return {d.size() == 683 && benign == 444 && malignant == 239,
            fmt("samples=%zu benign=%d malignant=%d", d.size(), benign, malignant)};
}

Outcome first_scaffold() {
    const auto& data = testing::iris();
    const auto set = iris_blocks();
    const auto order = set.by_size();
    PlotConfig c;
    const auto petal_width = static_cast<std::size_t>(data.attribute_index("petal_width"));
    c.attribute_order = {petal_width};
    for (std::size_t a = 0; a < data.dims(); ++a) {
        if (a != petal_width) c.attribute_order.push_back(a);
    }
    const auto g = map_dsc1(data, c);
    const auto u = dsc1_direction(c.first_angle);
    std::vector<std::pair<double, double>> spans;
    for (std::size_t k = 0; k < 3; ++k) {
        double lo = 1e300, hi = -1e300;
        for (int id : set.blocks[order[k]].member_ids) {
            const auto& tip = g.polylines.at(static_cast<std::size_t>(id)).vertices.at(1);
            const double along = tip.x * u.x + tip.y * u.y;
            lo = std::min(lo, along);
            hi = std::max(hi, along);
        }
        spans.emplace_back(lo, hi);
    }
    bool ok = true;
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = a + 1; b < 3; ++b) {
            ok = ok && (spans[a].second < spans[b].first || spans[b].second < spans[a].first);
        }
    }
    return {ok, fmt("intervals=[%.4f,%.4f] [%.4f,%.4f] [%.4f,%.4f]", spans[0].first, spans[0].second, spans[1].first,
                    spans[1].second, spans[2].first, spans[2].second)};
}

Outcome rule_equivalence() {
    TreeParams p;
    p.max_depth = kUnlimitedDepth;
    const auto tree = fit_tree(testing::iris(), p);
    const auto series = compile_tree_to_series(tree);
    int mismatches = 0;
    for (const auto& s : testing::iris().samples()) mismatches += classify_series(series, s.scaled) != tree.predict(s.scaled);
    return {mismatches == 0, fmt("stages=%zu plots=%zu mismatches=%d", series.stages.size(), series.plot_count(), mismatches)};
}

Outcome partition() {
    std::mt19937_64 rng(99);
    int violations = 0;
    std::size_t samples = 0;
    for (int t = 0; t < kPartitionDatasets; ++t) {
        const auto n = 10 + rng() % 191;
        const auto dims = 1 + rng() % 8;
        const int classes = 2 + static_cast<int>(rng() % 3);
        const auto data = testing::random_dataset(static_cast<std::uint64_t>(t), n, dims, classes);
        TreeParams p;
        p.max_depth = t % 2 ? kUnlimitedDepth : 1 + t % 5;
        const auto set = extract_hyperblocks(fit_tree(data, p), data);
        for (const auto& s : data.samples()) {
            int hits = 0;
            for (const auto& b : set.blocks) {
                bool inside = true;
                for (std::size_t a = 0; a < dims; ++a) {
                    const double v = s.scaled[a];
                    inside = inside && (v > b.lower[a] || (b.lower[a] == 0.0 && v == 0.0)) && v <= b.upper[a];
                }
                hits += inside;
            }
            violations += hits != 1;
            ++samples;
        }
    }
    return {violations == 0, fmt("datasets=%d samples=%zu violations=%d", kPartitionDatasets, samples, violations)};
}

Session fresh_wbc_session() {
    auto s = Session::open(testing::data_path("wbc-project.json"));
    auto p = s.project();
    p.split.reset();
    p.report.reset();
    s.replace(p);
    return s;
}

Outcome table_analog() {
    const auto start = Clock::now();
    auto s = fresh_wbc_session();
    const auto& report = s.evaluate();
    const double ms = elapsed_ms(start);
    bool ok = ms < kTableBudgetMs && report.validation_size == 68;
    std::string detail = fmt("validation=%zu from_boxes=%zu", report.validation_size, s.project().split->from_boxes);
    for (const auto& r : report.rows) {
        ok = ok && r.cv_average >= kCvLow && r.cv_average <= kCvHigh && r.worst_split_accuracy <= r.cv_average - kWorstGap;
        if (r.spec.kind == ClassifierKind::decision_tree) {
            ok = ok && r.worst_split_accuracy >= kDtWorstLow && r.worst_split_accuracy <= kDtWorstHigh;
        }
        detail += fmt(" %s=%.1f/%.1f", r.spec.label().c_str(), r.cv_average, r.worst_split_accuracy);
    }
    return {ok, detail};
}

Outcome determinism() {
    auto a = fresh_wbc_session();
    auto b = fresh_wbc_session();
    const auto ra = json(a.evaluate()).dump() + report_text(a.evaluate());
    const auto rb = json(b.evaluate()).dump() + report_text(b.evaluate());
    const auto render = [] {
        const auto s = Session::open(testing::data_path("iris-project.json"));
        return render_svg(s.geometry("main", true), {}, {}, s.data().classes());
    };
    const auto sa = render();
    const auto sb = render();
    return {ra == rb && sa == sb, fmt("report_bytes=%zu identical=%d svg_bytes=%zu identical=%d", ra.size(), ra == rb,
                                      sa.size(), sa == sb)};
}

}  // namespace

int main() {
    run("iris-hyperblocks", iris_hyperblocks);
    run("losslessness", losslessness);
    run("wbc-ingestion", wbc_ingestion);
    run("first-scaffold-separation", first_scaffold);
    run("rule-series-equivalence", rule_equivalence);
    run("hyperblock-partition", partition);
    run("worst-split-vs-cv", table_analog);
    run("determinism", determinism);
    return failures;
}
