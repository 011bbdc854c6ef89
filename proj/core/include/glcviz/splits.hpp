#pragma once

#include "glcviz/dataset.hpp"
#include "glcviz/glc.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glcviz {

enum class SelectMode {
    bounding,  // a polyline vertex lies in the closed rectangle
    clipping,  // a polyline segment intersects the closed rectangle
};

std::string to_string(SelectMode mode);
SelectMode select_mode_from_string(std::string_view text);

/// Bounding for DSC2-style plots, clipping for DSC1.
SelectMode default_select_mode(CoordinateSystem system);

struct SelectionBox {
    Rect rect;
    SelectMode mode = SelectMode::bounding;
    std::string plot;  // name of the project plot the rectangle was drawn on

    friend bool operator==(const SelectionBox&, const SelectionBox&) = default;
};

/// Closed-segment / closed-rectangle intersection test.
bool segment_intersects(Point a, Point b, const Rect& rect);

/// Sorted, unique ids of the samples the box selects. Throws RangeError on a
/// degenerate rectangle.
std::vector<int> box_select(const PlotGeometry& geometry, const SelectionBox& box);

struct SplitOptions {
    double target_fraction = 0.10;
    std::uint64_t seed = 0;
    std::optional<std::size_t> per_box_cap;  // unlimited when empty
};

struct WorstSplit {
    std::vector<int> validation_ids;  // ascending
    std::vector<int> training_ids;    // ascending
    double target_fraction = 0.10;
    std::uint64_t seed = 0;
    std::optional<std::size_t> per_box_cap;
    std::size_t from_boxes = 0;   // validation samples taken from selections
    std::size_t random_fill = 0;  // validation samples drawn from the remainder

    friend bool operator==(const WorstSplit&, const WorstSplit&) = default;
};

/// floor(target_fraction * size), guarded against representation error.
std::size_t validation_quota(double target_fraction, std::size_t size);

/// Validation takes the selected ids box by box (ascending id within a box)
/// until floor(target_fraction * N); a shortfall is filled uniformly at
/// random from the unselected samples with `seed`.
WorstSplit build_worst_split(const Dataset& data, const std::vector<std::vector<int>>& selections,
                             const SplitOptions& options = {});

/// Writes one id per line to each file.
void export_split(const WorstSplit& split, const std::filesystem::path& validation_file,
                  const std::filesystem::path& training_file);

}  // namespace glcviz
