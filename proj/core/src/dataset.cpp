#include "glcviz/dataset.hpp"

#include "glcviz/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>

namespace glcviz {

namespace {

std::string trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string_view rest(line);
    while (true) {
        const auto comma = rest.find(',');
        cells.push_back(trim(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return cells;
}

bool parse_real(const std::string& cell, double& out) {
    if (cell.empty()) return false;
    // whole cell must be consumed
    char* end = nullptr;
    out = std::strtod(cell.c_str(), &end);
    return end == cell.c_str() + cell.size() && std::isfinite(out);
}

}  // namespace

ScaledColumn minmax_scale(std::span<const double> raw) {
    ScaledColumn col;
    if (raw.empty()) return col;
    const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
    col.min = *lo;
    col.max = *hi;
    col.values.reserve(raw.size());
    const double range = col.max - col.min;
    for (double v : raw) {
        col.values.push_back(range > 0.0 ? std::clamp((v - col.min) / range, 0.0, 1.0) : 0.0);
    }
    return col;
}

double unscale(double scaled, double min, double max) {
    if (min > max) throw RangeError("unscale: min exceeds max");
    if (scaled < -kScaleTolerance || scaled > 1.0 + kScaleTolerance) {
        throw RangeError("unscale: scaled value " + std::to_string(scaled) + " outside [0,1]");
    }
    return min + scaled * (max - min);
}

Dataset Dataset::from_rows(std::string name, std::vector<std::string> attribute_names,
                           const std::vector<std::vector<double>>& rows,
                           const std::vector<std::string>& labels) {
    if (rows.empty()) throw Error("empty dataset");
    if (rows.size() != labels.size()) throw DimensionError("row count differs from label count");
    const std::size_t n = attribute_names.size();

    Dataset d;
    d.name_ = std::move(name);
    d.samples_.resize(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != n) {
            throw DimensionError("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                                 " values, expected " + std::to_string(n));
        }
        auto& s = d.samples_[r];
        s.id = static_cast<int>(r);
        s.raw = rows[r];
        s.scaled.resize(n);
        auto it = std::find(d.classes_.begin(), d.classes_.end(), labels[r]);
        if (it == d.classes_.end()) {
            d.classes_.push_back(labels[r]);
            it = d.classes_.end() - 1;
        }
        s.label = static_cast<int>(it - d.classes_.begin());
    }

    std::vector<double> column(rows.size());
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t r = 0; r < rows.size(); ++r) column[r] = rows[r][a];
        const auto scaled = minmax_scale(column);
        d.attributes_.push_back({std::move(attribute_names[a]), scaled.min, scaled.max});
        for (std::size_t r = 0; r < rows.size(); ++r) d.samples_[r].scaled[a] = scaled.values[r];
    }
    return d;
}

int Dataset::class_index(const std::string& label) const {
    const auto it = std::find(classes_.begin(), classes_.end(), label);
    return it == classes_.end() ? -1 : static_cast<int>(it - classes_.begin());
}

int Dataset::attribute_index(const std::string& name) const {
    for (std::size_t i = 0; i < attributes_.size(); ++i) {
        if (attributes_[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

std::vector<int> Dataset::class_counts() const {
    std::vector<int> counts(classes_.size(), 0);
    for (const auto& s : samples_) ++counts[static_cast<std::size_t>(s.label)];
    return counts;
}

std::vector<int> Dataset::all_ids() const {
    std::vector<int> ids(samples_.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    return ids;
}

Dataset Dataset::with_duplicated_attribute(std::size_t index) const {
    if (index >= dims()) throw DimensionError("attribute index out of range");
    Dataset d = *this;
    auto attr = attributes_[index];
    attr.name += "_dup";
    d.attributes_.push_back(attr);
    for (auto& s : d.samples_) {
        s.raw.push_back(s.raw[index]);
        s.scaled.push_back(s.scaled[index]);
    }
    return d;
}

Dataset Dataset::without_attribute(std::size_t index) const {
    if (index >= dims()) throw DimensionError("attribute index out of range");
    if (dims() == 1) throw DimensionError("cannot drop the only attribute");
    Dataset d = *this;
    const auto offset = static_cast<std::ptrdiff_t>(index);
    d.attributes_.erase(d.attributes_.begin() + offset);
    for (auto& s : d.samples_) {
        s.raw.erase(s.raw.begin() + offset);
        s.scaled.erase(s.scaled.begin() + offset);
    }
    return d;
}

Dataset parse_dataset(std::istream& in, const std::string& name, const std::string& class_column,
                      MissingPolicy policy) {
    std::string line;
    if (!std::getline(in, line)) throw Error("empty dataset");
    const auto header = split_row(line);
    const auto class_it = std::find(header.begin(), header.end(), class_column);
    if (class_it == header.end()) throw ParseError("unknown class column '" + class_column + "'");
    const auto class_pos = static_cast<std::size_t>(class_it - header.begin());

    std::vector<std::string> names;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c != class_pos) names.push_back(header[c]);
    }

    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_row(line);
        if (cells.size() != header.size()) {
            throw ParseError("row " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                             " cells, found " + std::to_string(cells.size()));
        }
        std::vector<double> values;
        values.reserve(names.size());
        bool missing = false;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c == class_pos) continue;
            if (cells[c] == kMissingToken) {
                missing = true;
                continue;
            }
            double v = 0.0;
            if (!parse_real(cells[c], v)) {
                throw ParseError("row " + std::to_string(line_no) + ", column '" + header[c] +
                                 "': non-numeric value '" + cells[c] + "'");
            }
            values.push_back(v);
        }
        if (cells[class_pos].empty() || cells[class_pos] == kMissingToken) missing = true;
        if (missing) {
            switch (policy) {
                case MissingPolicy::drop_row: continue;
            }
        }
        rows.push_back(std::move(values));
        labels.push_back(cells[class_pos]);
    }
    return Dataset::from_rows(name, std::move(names), rows, labels);
}

Dataset load_dataset(const std::filesystem::path& path, const std::string& class_column, MissingPolicy policy) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read dataset file: " + path.string());
    return parse_dataset(in, path.stem().string(), class_column, policy);
}

}  // namespace glcviz
