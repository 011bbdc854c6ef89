#include "glcviz/classifiers.hpp"

#include "glcviz/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace glcviz {

namespace {

constexpr double kGainTolerance = 1e-12;

int argmax_lowest(std::span<const int> counts) {
    int best = 0;
    for (std::size_t c = 1; c < counts.size(); ++c) {
        if (counts[c] > counts[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
    }
    return best;
}

double gini(std::span<const int> counts, int total) {
    if (total == 0) return 0.0;
    double sum_sq = 0.0;
    for (int c : counts) {
        const double p = static_cast<double>(c) / total;
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

struct SplitChoice {
    bool found = false;
    int attribute = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

class TreeBuilder {
public:
    TreeBuilder(const Dataset& data, const TreeParams& params) : data_(data), params_(params) {}

    int build(std::vector<int> ids, int depth, std::vector<TreeNode>& nodes) {
        const int index = static_cast<int>(nodes.size());
        nodes.emplace_back();
        {
            auto& node = nodes.back();
            node.depth = depth;
            node.class_counts.assign(data_.class_count(), 0);
            for (int id : ids) ++node.class_counts[static_cast<std::size_t>(data_.sample(id).label)];
            node.majority = argmax_lowest(node.class_counts);
        }

        const auto& counts = nodes[static_cast<std::size_t>(index)].class_counts;
        const bool pure = std::count_if(counts.begin(), counts.end(), [](int c) { return c > 0; }) <= 1;
        const auto n = static_cast<int>(ids.size());
        if (pure || depth >= params_.max_depth || n < 2 * params_.min_samples_leaf) return index;

        const auto split = best_split(ids, counts);
        if (!split.found) return index;

        std::vector<int> left_ids;
        std::vector<int> right_ids;
        for (int id : ids) {
            const double v = data_.sample(id).scaled[static_cast<std::size_t>(split.attribute)];
            (v <= split.threshold ? left_ids : right_ids).push_back(id);
        }
        nodes[static_cast<std::size_t>(index)].attribute = split.attribute;
        nodes[static_cast<std::size_t>(index)].threshold = split.threshold;
        const int left = build(std::move(left_ids), depth + 1, nodes);
        const int right = build(std::move(right_ids), depth + 1, nodes);
        nodes[static_cast<std::size_t>(index)].left = left;
        nodes[static_cast<std::size_t>(index)].right = right;
        return index;
    }

private:
    SplitChoice best_split(const std::vector<int>& ids, const std::vector<int>& parent_counts) const {
        const auto n = static_cast<int>(ids.size());
        const double parent = gini(parent_counts, n);
        const std::size_t k = parent_counts.size();
        SplitChoice best;
        std::vector<std::pair<double, int>> column(ids.size());
        std::vector<int> left(k);
        std::vector<int> right(k);

        for (std::size_t a = 0; a < data_.dims(); ++a) {
            for (std::size_t i = 0; i < ids.size(); ++i) {
                const auto& s = data_.sample(ids[i]);
                column[i] = {s.scaled[a], s.label};
            }
            std::sort(column.begin(), column.end());
            std::fill(left.begin(), left.end(), 0);
            right = parent_counts;
            for (int i = 0; i + 1 < n; ++i) {
                const auto label = static_cast<std::size_t>(column[static_cast<std::size_t>(i)].second);
                ++left[label];
                --right[label];
                const double here = column[static_cast<std::size_t>(i)].first;
                const double next = column[static_cast<std::size_t>(i) + 1].first;
                if (!(here < next)) continue;
                const int nl = i + 1;
                const int nr = n - nl;
                if (nl < params_.min_samples_leaf || nr < params_.min_samples_leaf) continue;
                const double gain = parent - (static_cast<double>(nl) / n) * gini(left, nl) -
                                    (static_cast<double>(nr) / n) * gini(right, nr);
                const double threshold = here + (next - here) / 2.0;
                // Attributes are scanned in ascending order, so an equal gain on a
                // later attribute replaces the incumbent; within one attribute the
                // first (lowest) threshold is kept.
                const bool better = !best.found || gain > best.gain + kGainTolerance ||
                                    (std::abs(gain - best.gain) <= kGainTolerance &&
                                     static_cast<int>(a) > best.attribute);
                if (better) best = {true, static_cast<int>(a), threshold, gain};
            }
        }
        return best;
    }

    const Dataset& data_;
    TreeParams params_;
};

}  // namespace

std::string to_string(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::decision_tree: return "decision-tree";
        case ClassifierKind::knn: return "knn";
        case ClassifierKind::gaussian_nb: return "gaussian-nb";
    }
    return "unknown";
}

ClassifierKind classifier_kind_from_string(std::string_view text) {
    if (text == "decision-tree" || text == "dt") return ClassifierKind::decision_tree;
    if (text == "knn") return ClassifierKind::knn;
    if (text == "gaussian-nb" || text == "nb") return ClassifierKind::gaussian_nb;
    throw ConfigError("unknown classifier kind '" + std::string(text) + "'");
}

void ClassifierSpec::validate() const {
    switch (kind) {
        case ClassifierKind::decision_tree:
            if (tree.max_depth < 1) throw ConfigError("max_depth must be >= 1");
            if (tree.min_samples_leaf < 1) throw ConfigError("min_samples_leaf must be >= 1");
            break;
        case ClassifierKind::knn:
            if (k < 1) throw ConfigError("k must be >= 1");
            break;
        case ClassifierKind::gaussian_nb:
            if (!(variance_floor > 0.0)) throw ConfigError("variance floor must be > 0");
            break;
    }
}

std::string ClassifierSpec::label() const {
    switch (kind) {
        case ClassifierKind::decision_tree: return "DT";
        case ClassifierKind::knn: return "KNN";
        case ClassifierKind::gaussian_nb: return "NB";
    }
    return "?";
}

int TreeNode::sample_count() const { return std::accumulate(class_counts.begin(), class_counts.end(), 0); }

void DecisionTree::check_arity(std::span<const double> x) const {
    if (x.size() != dims_) {
        throw DimensionError("sample has " + std::to_string(x.size()) + " attributes, model expects " +
                             std::to_string(dims_));
    }
}

int DecisionTree::leaf_for(std::span<const double> x) const {
    check_arity(x);
    int index = 0;
    while (!nodes_[static_cast<std::size_t>(index)].is_leaf()) {
        const auto& n = nodes_[static_cast<std::size_t>(index)];
        index = x[static_cast<std::size_t>(n.attribute)] <= n.threshold ? n.left : n.right;
    }
    return index;
}

int DecisionTree::predict(std::span<const double> x) const {
    return nodes_[static_cast<std::size_t>(leaf_for(x))].majority;
}

std::vector<int> DecisionTree::leaves() const {
    std::vector<int> out;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        const auto& n = nodes_[static_cast<std::size_t>(i)];
        if (n.is_leaf()) {
            out.push_back(i);
        } else {
            stack.push_back(n.right);
            stack.push_back(n.left);
        }
    }
    return out;
}

int DecisionTree::depth() const {
    int d = 0;
    for (const auto& n : nodes_) d = std::max(d, n.depth);
    return d;
}

DecisionTree fit_tree(const Dataset& data, std::span<const int> ids, const TreeParams& params) {
    if (ids.empty()) throw Error("fit_tree: empty training set");
    ClassifierSpec{ClassifierKind::decision_tree, params}.validate();
    DecisionTree tree;
    tree.dims_ = data.dims();
    tree.class_count_ = data.class_count();
    tree.params_ = params;
    TreeBuilder builder(data, params);
    builder.build(std::vector<int>(ids.begin(), ids.end()), 0, tree.nodes_);
    return tree;
}

DecisionTree fit_tree(const Dataset& data, const TreeParams& params) {
    const auto ids = data.all_ids();
    return fit_tree(data, ids, params);
}

KnnModel fit_knn(const Dataset& data, std::span<const int> ids, int k) {
    if (ids.empty()) throw Error("fit_knn: empty training set");
    if (k < 1) throw ConfigError("k must be >= 1");
    KnnModel m;
    m.k_ = k;
    m.dims_ = data.dims();
    m.class_count_ = data.class_count();
    m.points_.reserve(ids.size() * m.dims_);
    for (int id : ids) {
        const auto& s = data.sample(id);
        m.points_.insert(m.points_.end(), s.scaled.begin(), s.scaled.end());
        m.labels_.push_back(s.label);
        m.ids_.push_back(s.id);
    }
    return m;
}

int KnnModel::predict(std::span<const double> x) const {
    if (x.size() != dims_) throw DimensionError("sample arity differs from kNN training arity");
    const std::size_t n = labels_.size();
    std::vector<std::pair<double, int>> order(n);  // (squared distance, row)
    for (std::size_t r = 0; r < n; ++r) {
        double d = 0.0;
        for (std::size_t a = 0; a < dims_; ++a) {
            const double diff = points_[r * dims_ + a] - x[a];
            d += diff * diff;
        }
        order[r] = {d, static_cast<int>(r)};
    }
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(k_), n);
    const auto by_distance_then_id = [this](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return ids_[static_cast<std::size_t>(a.second)] < ids_[static_cast<std::size_t>(b.second)];
    };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                      by_distance_then_id);
    std::vector<int> votes(class_count_, 0);
    for (std::size_t i = 0; i < take; ++i) ++votes[static_cast<std::size_t>(labels_[static_cast<std::size_t>(order[i].second)])];
    return argmax_lowest(votes);
}

NaiveBayesModel fit_nb(const Dataset& data, std::span<const int> ids, double variance_floor) {
    if (ids.empty()) throw Error("fit_nb: empty training set");
    if (!(variance_floor > 0.0)) throw ConfigError("variance floor must be > 0");
    const std::size_t k = data.class_count();
    const std::size_t d = data.dims();
    NaiveBayesModel m;
    m.dims_ = d;
    std::vector<int> counts(k, 0);
    m.means_.assign(k, std::vector<double>(d, 0.0));
    m.variances_.assign(k, std::vector<double>(d, 0.0));
    for (int id : ids) {
        const auto& s = data.sample(id);
        const auto c = static_cast<std::size_t>(s.label);
        ++counts[c];
        for (std::size_t a = 0; a < d; ++a) m.means_[c][a] += s.scaled[a];
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) {
            throw Error("fit_nb: class '" + data.class_name(static_cast<int>(c)) + "' has no training samples");
        }
        for (auto& v : m.means_[c]) v /= counts[c];
    }
    for (int id : ids) {
        const auto& s = data.sample(id);
        const auto c = static_cast<std::size_t>(s.label);
        for (std::size_t a = 0; a < d; ++a) {
            const double diff = s.scaled[a] - m.means_[c][a];
            m.variances_[c][a] += diff * diff;
        }
    }
    m.priors_.resize(k);
    for (std::size_t c = 0; c < k; ++c) {
        m.priors_[c] = static_cast<double>(counts[c]) / static_cast<double>(ids.size());
        for (auto& v : m.variances_[c]) v = std::max(v / counts[c], variance_floor);
    }
    return m;
}

std::vector<double> NaiveBayesModel::log_posteriors(std::span<const double> x) const {
    if (x.size() != dims_) throw DimensionError("sample arity differs from naive Bayes training arity");
    constexpr double kLog2Pi = 1.8378770664093453;
    std::vector<double> out(priors_.size());
    for (std::size_t c = 0; c < priors_.size(); ++c) {
        double lp = std::log(priors_[c]);
        for (std::size_t a = 0; a < dims_; ++a) {
            const double var = variances_[c][a];
            const double diff = x[a] - means_[c][a];
            lp -= 0.5 * (kLog2Pi + std::log(var) + diff * diff / var);
        }
        out[c] = lp;
    }
    return out;
}

int NaiveBayesModel::predict(std::span<const double> x) const {
    const auto lp = log_posteriors(x);
    return static_cast<int>(std::max_element(lp.begin(), lp.end()) - lp.begin());
}

Model fit(const ClassifierSpec& spec, const Dataset& data, std::span<const int> ids) {
    spec.validate();
    switch (spec.kind) {
        case ClassifierKind::decision_tree: return fit_tree(data, ids, spec.tree);
        case ClassifierKind::knn: return fit_knn(data, ids, spec.k);
        case ClassifierKind::gaussian_nb: return fit_nb(data, ids, spec.variance_floor);
    }
    throw ConfigError("unknown classifier kind");
}

int predict(const Model& model, std::span<const double> x) {
    return std::visit([&](const auto& m) { return m.predict(x); }, model);
}

double accuracy(const Model& model, const Dataset& data, std::span<const int> ids) {
    if (ids.empty()) return 0.0;
    std::size_t correct = 0;
    for (int id : ids) {
        const auto& s = data.sample(id);
        if (predict(model, s.scaled) == s.label) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(ids.size());
}

}  // namespace glcviz
