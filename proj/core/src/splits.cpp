#include "glcviz/splits.hpp"

#include "glcviz/error.hpp"
#include "glcviz/random.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace glcviz {

std::string to_string(SelectMode mode) { return mode == SelectMode::bounding ? "bounding" : "clipping"; }

SelectMode select_mode_from_string(std::string_view text) {
    if (text == "bounding") return SelectMode::bounding;
    if (text == "clipping") return SelectMode::clipping;
    throw ConfigError("unknown selection mode '" + std::string(text) + "'");
}

SelectMode default_select_mode(CoordinateSystem system) {
    return system == CoordinateSystem::dsc1 ? SelectMode::clipping : SelectMode::bounding;
}

bool segment_intersects(Point a, Point b, const Rect& rect) {
    // Liang-Barsky: clip the parameter range [0,1] against each slab.
    double t0 = 0.0;
    double t1 = 1.0;
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double p[4] = {-dx, dx, -dy, dy};
    const double q[4] = {a.x - rect.x_min, rect.x_max - a.x, a.y - rect.y_min, rect.y_max - a.y};
    for (int i = 0; i < 4; ++i) {
        if (p[i] == 0.0) {
            if (q[i] < 0.0) return false;
            continue;
        }
        const double r = q[i] / p[i];
        if (p[i] < 0.0) {
            t0 = std::max(t0, r);
        } else {
            t1 = std::min(t1, r);
        }
        if (t0 > t1) return false;
    }
    return true;
}

std::vector<int> box_select(const PlotGeometry& geometry, const SelectionBox& box) {
    if (box.rect.degenerate()) throw RangeError("selection rectangle is degenerate");
    std::set<int> ids;
    for (const auto& line : geometry.polylines) {
        if (ids.count(line.sample_id)) continue;
        const auto& v = line.vertices;
        bool hit = false;
        if (box.mode == SelectMode::bounding || v.size() == 1) {
            hit = std::any_of(v.begin(), v.end(), [&](Point p) { return box.rect.contains(p); });
        } else {
            for (std::size_t i = 0; i + 1 < v.size() && !hit; ++i) hit = segment_intersects(v[i], v[i + 1], box.rect);
        }
        if (hit) ids.insert(line.sample_id);
    }
    return {ids.begin(), ids.end()};
}

std::size_t validation_quota(double target_fraction, std::size_t size) {
    return static_cast<std::size_t>(std::floor(target_fraction * static_cast<double>(size) + 1e-9));
}

WorstSplit build_worst_split(const Dataset& data, const std::vector<std::vector<int>>& selections,
                             const SplitOptions& options) {
    if (data.size() == 0) throw Error("empty dataset");
    if (!(options.target_fraction > 0.0 && options.target_fraction < 1.0)) {
        throw ConfigError("target fraction must lie strictly inside (0,1)");
    }
    const std::size_t n = data.size();
    const std::size_t quota = std::min(validation_quota(options.target_fraction, n), n);

    std::vector<bool> chosen(n, false);
    std::vector<int> validation;
    for (const auto& selection : selections) {
        std::vector<int> ids = selection;
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        std::size_t taken = 0;
        for (int id : ids) {
            if (validation.size() >= quota) break;
            if (options.per_box_cap && taken >= *options.per_box_cap) break;
            if (id < 0 || static_cast<std::size_t>(id) >= n) throw RangeError("selected id " + std::to_string(id) + " not in dataset");
            if (chosen[static_cast<std::size_t>(id)]) continue;
            chosen[static_cast<std::size_t>(id)] = true;
            validation.push_back(id);
            ++taken;
        }
    }

    WorstSplit split;
    split.target_fraction = options.target_fraction;
    split.seed = options.seed;
    split.per_box_cap = options.per_box_cap;
    split.from_boxes = validation.size();

    if (validation.size() < quota) {
        std::vector<int> remainder;
        for (std::size_t i = 0; i < n; ++i) {
            if (!chosen[i]) remainder.push_back(static_cast<int>(i));
        }
        std::mt19937_64 rng(options.seed);
        seeded_shuffle(remainder, rng);
        const std::size_t need = quota - validation.size();
        for (std::size_t i = 0; i < need; ++i) {
            chosen[static_cast<std::size_t>(remainder[i])] = true;
            validation.push_back(remainder[i]);
        }
        split.random_fill = need;
    }

    std::sort(validation.begin(), validation.end());
    split.validation_ids = std::move(validation);
    for (std::size_t i = 0; i < n; ++i) {
        if (!chosen[i]) split.training_ids.push_back(static_cast<int>(i));
    }
    return split;
}

void export_split(const WorstSplit& split, const std::filesystem::path& validation_file,
                  const std::filesystem::path& training_file) {
    const auto write = [](const std::filesystem::path& path, const std::vector<int>& ids) {
        std::ofstream out(path);
        if (!out) throw Error("cannot write " + path.string());
        for (int id : ids) out << id << '\n';
    };
    write(validation_file, split.validation_ids);
    write(training_file, split.training_ids);
}

}  // namespace glcviz
