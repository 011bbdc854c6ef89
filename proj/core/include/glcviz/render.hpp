#pragma once

#include "glcviz/glc.hpp"

#include <span>
#include <string>
#include <vector>

namespace glcviz {

struct RenderLayers {
    bool samples = true;
    bool hb_bands = true;
    bool separators = true;
    bool boxes = true;
    bool axes = true;
};

/// Red, green, blue, then the Okabe-Ito colour-blind-safe set.
std::vector<std::string> default_palette();

struct RenderSpec {
    int width = 800;
    int height = 600;
    int margin = 24;
    std::vector<std::string> palette = default_palette();
    RenderLayers layers;
    double line_opacity = 0.45;

    /// Throws ConfigError when the canvas is too small for the margin, the
    /// opacity leaves [0,1] or the palette is shorter than `class_count`.
    void validate(std::size_t class_count) const;
};

struct SeparatorMark {
    Point from;
    Point to;
    std::string label;
};

struct RenderOverlays {
    std::vector<SeparatorMark> separators;
    std::vector<Rect> boxes;  // selection boxes
};

/// Standalone SVG document. Plot y points up and is flipped once here. Output
/// bytes depend only on the arguments.
std::string render_svg(const PlotGeometry& geometry, const RenderOverlays& overlays, const RenderSpec& spec,
                       std::span<const std::string> class_names = {});

}  // namespace glcviz
