#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace glcviz {

/// Token marking a missing cell in input files.
inline constexpr const char* kMissingToken = "?";

/// Tolerance used when checking scaled values against [0,1].
inline constexpr double kScaleTolerance = 1e-9;

enum class MissingPolicy { drop_row };

struct Attribute {
    std::string name;
    double min = 0.0;
    double max = 0.0;
};

struct Sample {
    int id = 0;
    std::vector<double> raw;
    std::vector<double> scaled;  // each in [0,1]
    int label = 0;               // index into Dataset::classes()
};

/// Min-max scaled column with the bounds needed to invert it.
struct ScaledColumn {
    std::vector<double> values;
    double min = 0.0;
    double max = 0.0;
};

/// Affine map of a column onto [0,1]. Constant columns map to all zeros.
ScaledColumn minmax_scale(std::span<const double> raw);

/// Inverse of minmax_scale for a single value. Throws RangeError when
/// `scaled` lies outside [0,1] by more than kScaleTolerance or min > max.
double unscale(double scaled, double min, double max);

/// Immutable, fully scaled tabular dataset.
///
/// Sample ids are 0-based positions among retained rows, in file order.
/// Class indices follow order of first appearance.
class Dataset {
public:
    Dataset() = default;

    /// Builds a dataset from raw rows; computes min/max and scaled values.
    /// Throws Error("empty dataset") when `rows` is empty.
    static Dataset from_rows(std::string name, std::vector<std::string> attribute_names,
                             const std::vector<std::vector<double>>& rows,
                             const std::vector<std::string>& labels);

    const std::string& name() const { return name_; }
    const std::vector<Attribute>& attributes() const { return attributes_; }
    const std::vector<Sample>& samples() const { return samples_; }
    const std::vector<std::string>& classes() const { return classes_; }

    std::size_t size() const { return samples_.size(); }
    std::size_t dims() const { return attributes_.size(); }
    std::size_t class_count() const { return classes_.size(); }

    const Sample& sample(std::size_t id) const { return samples_.at(id); }
    const std::string& class_name(int label) const { return classes_.at(static_cast<std::size_t>(label)); }

    /// Index of a class label, or -1.
    int class_index(const std::string& label) const;
    /// Index of an attribute by name, or -1.
    int attribute_index(const std::string& name) const;

    std::vector<int> class_counts() const;
    std::vector<int> all_ids() const;

    /// Copy with attribute `index` appended again as `<name>_dup`. Used to
    /// reach an even attribute count for paired coordinate systems.
    Dataset with_duplicated_attribute(std::size_t index) const;

    /// Copy without attribute `index`.
    Dataset without_attribute(std::size_t index) const;

private:
    std::string name_;
    std::vector<Attribute> attributes_;
    std::vector<Sample> samples_;
    std::vector<std::string> classes_;
};

/// Parses comma-separated text with a header row.
Dataset parse_dataset(std::istream& in, const std::string& name, const std::string& class_column,
                      MissingPolicy policy = MissingPolicy::drop_row);

/// Reads and parses a comma-separated file; the dataset name is the file stem.
Dataset load_dataset(const std::filesystem::path& path, const std::string& class_column = "class",
                     MissingPolicy policy = MissingPolicy::drop_row);

}  // namespace glcviz
