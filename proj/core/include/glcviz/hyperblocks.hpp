#pragma once

#include "glcviz/classifiers.hpp"
#include "glcviz/dataset.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace glcviz {

/// Axis-aligned box in scaled attribute space.
///
/// Interval semantics follow the tree's "value <= threshold goes left" rule:
/// attribute i covers (lower[i], upper[i]], closed at the bottom when
/// lower[i] == 0. Every point of [0,1]^n therefore belongs to exactly one
/// block of a tree partition.
struct Hyperblock {
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<int> member_ids;
    std::vector<int> class_counts;
    double purity = 0.0;
    int majority_class = 0;
    int leaf = -1;                     // tree node index, -1 for user-made blocks
    std::vector<int> path_attributes;  // split attributes root to leaf

    std::size_t dims() const { return lower.size(); }
    int size() const { return static_cast<int>(member_ids.size()); }

    std::vector<double> center() const;
    std::vector<double> lengths() const;

    /// Interval-form membership with the boundary convention above.
    bool contains(std::span<const double> x) const;
    /// Centre/length form: |x_i - c_i| <= L_i / 2 for every attribute.
    bool within_center_bounds(std::span<const double> x) const;
};

struct HyperblockSet {
    std::vector<Hyperblock> blocks;
    std::string source;   // e.g. "decision-tree depth=3 leaves=8"
    std::string dataset;  // dataset name

    /// Index of the first block containing `x`, or -1.
    int block_containing(std::span<const double> x) const;
    /// Block indices ordered by member count descending, ties by index.
    std::vector<std::size_t> by_size() const;
};

/// One block per tree leaf; members are the samples routed to that leaf.
HyperblockSet extract_hyperblocks(const DecisionTree& tree, const Dataset& data);

/// User-made block; members are the dataset samples it contains.
Hyperblock make_hyperblock(std::vector<double> lower, std::vector<double> upper, const Dataset& data);

struct PurityRow {
    std::size_t block = 0;  // index into HyperblockSet::blocks
    int sample_count = 0;
    double pct_of_dataset = 0.0;
    double pct_purity = 0.0;
    int majority_class = 0;
    double pct_of_class = 0.0;  // share of the majority class captured by the block
    std::vector<int> path_attributes;
};

/// Rows sorted by sample count descending.
std::vector<PurityRow> purity_table(const HyperblockSet& set, const Dataset& data);
std::string purity_table_text(const std::vector<PurityRow>& rows, const Dataset& data);
std::string purity_table_csv(const std::vector<PurityRow>& rows, const Dataset& data);

/// Attributes whose intervals are disjoint between `a` and `b`, ascending.
std::vector<std::size_t> separating_attributes(const Hyperblock& a, const Hyperblock& b);
/// Lowest attribute of separation, if any. Throws DimensionError on mismatch.
std::optional<std::size_t> attribute_of_separation(const Hyperblock& a, const Hyperblock& b);

enum class OrderMode {
    single,  // DSC1 / PC: only the first slot is driven by the blocks
    paired,  // DSC2 / SPC: a second pair of blocks may fill the second slot
};

struct AttributeOrder {
    std::vector<std::size_t> order;
    bool warning = false;  // no separating attribute found; identity returned
};

/// Orders attributes so the separation attribute of blocks[0]/blocks[1] comes
/// first. In paired mode, the first other block pair with a different
/// separation attribute supplies the second slot. The remaining attributes
/// keep dataset order.
AttributeOrder order_attributes(std::span<const Hyperblock> blocks, OrderMode mode = OrderMode::single);

}  // namespace glcviz
