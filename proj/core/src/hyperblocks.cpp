#include "glcviz/hyperblocks.hpp"

#include "glcviz/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace glcviz {

namespace {

bool interval_contains(double lo, double hi, double x) { return (x > lo || (lo == 0.0 && x == 0.0)) && x <= hi; }

bool intervals_overlap(double lo_a, double hi_a, double lo_b, double hi_b) {
    const double lo = std::max(lo_a, lo_b);
    const double hi = std::min(hi_a, hi_b);
    if (lo < hi) return true;
    if (lo > hi) return false;
    return hi == 0.0 && lo_a == 0.0 && lo_b == 0.0;
}

void finish_block(Hyperblock& b, const Dataset& data) {
    b.class_counts.assign(data.class_count(), 0);
    for (int id : b.member_ids) ++b.class_counts[static_cast<std::size_t>(data.sample(id).label)];
    const int total = std::accumulate(b.class_counts.begin(), b.class_counts.end(), 0);
    if (total > 0) {
        const auto it = std::max_element(b.class_counts.begin(), b.class_counts.end());
        b.majority_class = static_cast<int>(it - b.class_counts.begin());
        b.purity = static_cast<double>(*it) / total;
    }
}

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string attribute_list(const std::vector<int>& attrs, const Dataset& data, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        if (i) out += sep;
        out += data.attributes().at(static_cast<std::size_t>(attrs[i])).name;
    }
    return out;
}

}  // namespace

std::vector<double> Hyperblock::center() const {
    std::vector<double> c(dims());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (lower[i] + upper[i]) / 2.0;
    return c;
}

std::vector<double> Hyperblock::lengths() const {
    std::vector<double> l(dims());
    for (std::size_t i = 0; i < l.size(); ++i) l[i] = upper[i] - lower[i];
    return l;
}

bool Hyperblock::contains(std::span<const double> x) const {
    if (x.size() != dims()) throw DimensionError("point arity differs from hyperblock arity");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!interval_contains(lower[i], upper[i], x[i])) return false;
    }
    return true;
}

bool Hyperblock::within_center_bounds(std::span<const double> x) const {
    if (x.size() != dims()) throw DimensionError("point arity differs from hyperblock arity");
    const auto c = center();
    const auto l = lengths();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::abs(x[i] - c[i]) > l[i] / 2.0) return false;
    }
    return true;
}

int HyperblockSet::block_containing(std::span<const double> x) const {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].contains(x)) return static_cast<int>(i);
    }
    return -1;
}

std::vector<std::size_t> HyperblockSet::by_size() const {
    std::vector<std::size_t> idx(blocks.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return blocks[a].size() > blocks[b].size();
    });
    return idx;
}

HyperblockSet extract_hyperblocks(const DecisionTree& tree, const Dataset& data) {
    if (tree.dims() != data.dims()) throw DimensionError("tree arity differs from dataset arity");
    HyperblockSet set;
    set.dataset = data.name();

    struct Frame {
        int node;
        std::vector<double> lower;
        std::vector<double> upper;
        std::vector<int> path;
    };
    std::vector<int> leaf_to_block(tree.nodes().size(), -1);
    std::vector<Frame> stack;
    stack.push_back({0, std::vector<double>(data.dims(), 0.0), std::vector<double>(data.dims(), 1.0), {}});
    while (!stack.empty()) {
        auto f = std::move(stack.back());
        stack.pop_back();
        const auto& n = tree.node(f.node);
        if (n.is_leaf()) {
            Hyperblock b;
            b.lower = std::move(f.lower);
            b.upper = std::move(f.upper);
            b.leaf = f.node;
            b.path_attributes = std::move(f.path);
            b.majority_class = n.majority;
            leaf_to_block[static_cast<std::size_t>(f.node)] = static_cast<int>(set.blocks.size());
            set.blocks.push_back(std::move(b));
            continue;
        }
        const auto a = static_cast<std::size_t>(n.attribute);
        Frame right = f;
        right.node = n.right;
        right.lower[a] = std::max(right.lower[a], n.threshold);
        right.path.push_back(n.attribute);
        Frame left = std::move(f);
        left.node = n.left;
        left.upper[a] = std::min(left.upper[a], n.threshold);
        left.path.push_back(n.attribute);
        stack.push_back(std::move(right));
        stack.push_back(std::move(left));
    }

    for (const auto& s : data.samples()) {
        const int block = leaf_to_block[static_cast<std::size_t>(tree.leaf_for(s.scaled))];
        set.blocks[static_cast<std::size_t>(block)].member_ids.push_back(s.id);
    }
    for (auto& b : set.blocks) finish_block(b, data);

    set.source = "decision-tree depth=" + std::to_string(tree.depth()) +
                 " leaves=" + std::to_string(set.blocks.size());
    return set;
}

Hyperblock make_hyperblock(std::vector<double> lower, std::vector<double> upper, const Dataset& data) {
    if (lower.size() != data.dims() || upper.size() != data.dims()) {
        throw DimensionError("hyperblock bounds arity differs from dataset arity");
    }
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (!(0.0 <= lower[i] && lower[i] <= upper[i] && upper[i] <= 1.0)) {
            throw RangeError("hyperblock bounds must satisfy 0 <= lower <= upper <= 1");
        }
    }
    Hyperblock b;
    b.lower = std::move(lower);
    b.upper = std::move(upper);
    for (const auto& s : data.samples()) {
        if (b.contains(s.scaled)) b.member_ids.push_back(s.id);
    }
    finish_block(b, data);
    return b;
}

std::vector<PurityRow> purity_table(const HyperblockSet& set, const Dataset& data) {
    const auto class_totals = data.class_counts();
    std::vector<PurityRow> rows;
    for (std::size_t i : set.by_size()) {
        const auto& b = set.blocks[i];
        PurityRow r;
        r.block = i;
        r.sample_count = b.size();
        r.pct_of_dataset = data.size() ? 100.0 * b.size() / static_cast<double>(data.size()) : 0.0;
        r.pct_purity = 100.0 * b.purity;
        r.majority_class = b.majority_class;
        const int total = class_totals.at(static_cast<std::size_t>(b.majority_class));
        r.pct_of_class = total ? 100.0 * b.class_counts[static_cast<std::size_t>(b.majority_class)] / total : 0.0;
        r.path_attributes = b.path_attributes;
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string purity_table_text(const std::vector<PurityRow>& rows, const Dataset& data) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-6s %8s %10s %9s  %-14s %10s  %s\n", "block", "samples", "% dataset",
                  "% purity", "class", "% of class", "attributes");
    out << line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-6s %8d %10s %9s  %-14s %10s  ", ("HB" + std::to_string(r.block + 1)).c_str(),
                      r.sample_count, fixed2(r.pct_of_dataset).c_str(), fixed2(r.pct_purity).c_str(),
                      data.class_name(r.majority_class).c_str(), fixed2(r.pct_of_class).c_str());
        out << line << attribute_list(r.path_attributes, data, ", ") << '\n';
    }
    return out.str();
}

std::string purity_table_csv(const std::vector<PurityRow>& rows, const Dataset& data) {
    std::ostringstream out;
    out << "block,sample_count,pct_of_dataset,pct_purity,majority_class,pct_of_class,attributes\n";
    for (const auto& r : rows) {
        out << "HB" << r.block + 1 << ',' << r.sample_count << ',' << fixed2(r.pct_of_dataset) << ','
            << fixed2(r.pct_purity) << ',' << data.class_name(r.majority_class) << ',' << fixed2(r.pct_of_class)
            << ',' << attribute_list(r.path_attributes, data, ";") << '\n';
    }
    return out.str();
}

std::vector<std::size_t> separating_attributes(const Hyperblock& a, const Hyperblock& b) {
    if (a.dims() != b.dims()) throw DimensionError("hyperblocks have different arity");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < a.dims(); ++i) {
        if (!intervals_overlap(a.lower[i], a.upper[i], b.lower[i], b.upper[i])) out.push_back(i);
    }
    return out;
}

std::optional<std::size_t> attribute_of_separation(const Hyperblock& a, const Hyperblock& b) {
    const auto attrs = separating_attributes(a, b);
    if (attrs.empty()) return std::nullopt;
    return attrs.front();
}

AttributeOrder order_attributes(std::span<const Hyperblock> blocks, OrderMode mode) {
    AttributeOrder result;
    if (blocks.empty()) return result;
    const std::size_t n = blocks.front().dims();
    result.order.resize(n);
    std::iota(result.order.begin(), result.order.end(), 0);
    if (blocks.size() < 2) {
        result.warning = true;
        return result;
    }

    const auto first = attribute_of_separation(blocks[0], blocks[1]);
    if (!first) {
        result.warning = true;
        return result;
    }
    std::vector<std::size_t> lead{*first};

    if (mode == OrderMode::paired) {
        for (std::size_t i = 0; i < blocks.size() && lead.size() < 2; ++i) {
            for (std::size_t j = i + 1; j < blocks.size() && lead.size() < 2; ++j) {
                if (i == 0 && j == 1) continue;
                for (std::size_t attr : separating_attributes(blocks[i], blocks[j])) {
                    if (attr != *first) {
                        lead.push_back(attr);
                        break;
                    }
                }
            }
        }
    }

    result.order = lead;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::find(lead.begin(), lead.end(), i) == lead.end()) result.order.push_back(i);
    }
    return result;
}

}  // namespace glcviz
