#pragma once

#include "glcviz/dataset.hpp"
#include "glcviz/hyperblocks.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace glcviz {

enum class CoordinateSystem { pc, spc, dsc1, dsc2, ngon_dsc2 };

std::string to_string(CoordinateSystem system);
/// Accepts "pc", "spc", "dsc1", "dsc2", "ngon" / "ngon-dsc2".
CoordinateSystem coordinate_system_from_string(std::string_view text);

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct Rect {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    bool contains(Point p) const { return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max; }
    bool degenerate() const { return !(x_min < x_max && y_min < y_max); }
    void expand(Point p);
    friend bool operator==(const Rect&, const Rect&) = default;
};

/// Piecewise-linear monotone map on [0,1] fixing 0 and 1 and sending the
/// separator position to the target: shrinks values below the separator and
/// stretches those above it when target > position (and vice versa).
struct NonlinearSeparator {
    double position = 0.5;  // s in (0,1)
    double target = 0.5;    // t in (0,1)

    void validate() const;
    double apply(double v) const;
    double invert(double v) const;
    friend bool operator==(const NonlinearSeparator&, const NonlinearSeparator&) = default;
};

/// Column-wise application of NonlinearSeparator{s, t}. Throws ConfigError
/// when s or t is not strictly inside (0,1).
std::vector<double> nonlinear_scale_attribute(std::span<const double> values, double s, double t);

/// One DSC2 plot of an n-Gon layout.
struct NgonVertex {
    std::vector<std::size_t> attribute_order;  // empty: dataset order
    std::vector<double> pair_weights;          // empty: all 1
    friend bool operator==(const NgonVertex&, const NgonVertex&) = default;
};

struct PlotConfig {
    CoordinateSystem system = CoordinateSystem::dsc1;
    std::vector<std::size_t> attribute_order;  // empty: dataset order
    /// DSC1 rotations from the vertical axis in degrees, both in (-90, 0).
    double first_angle = -10.0;
    double rest_angle = -45.0;
    std::vector<double> pair_weights;  // DSC2: one per pair, empty: all 1
    std::map<std::size_t, NonlinearSeparator> nonlinear;  // keyed by dataset attribute index
    std::vector<NgonVertex> ngon_vertices;
    double ngon_radius = 1.0;
    double panel_spacing = 1.0;  // SPC horizontal panel offset

    /// Throws ConfigError (or DimensionError for odd paired arity).
    void validate(std::size_t dims) const;
    std::vector<std::size_t> resolved_order(std::size_t dims) const;
    std::vector<double> resolved_weights(std::size_t dims) const;

    friend bool operator==(const PlotConfig&, const PlotConfig&) = default;
};

struct Polyline {
    int sample_id = -1;  // -1 for overlay lines
    int label = 0;
    int copy = 0;        // n-Gon vertex index
    std::vector<Point> vertices;
};

struct AxisLine {
    Point from;
    Point to;
    std::string label;
};

/// Hyperblock overlay: bands map the block's lower and upper bounds through
/// the plot construction; boxes are per-pair rectangles (SPC, DSC2).
struct BlockOverlay {
    std::size_t block = 0;
    int label = 0;
    int copy = 0;
    Polyline lower;
    Polyline upper;
    std::vector<Rect> boxes;
};

struct PlotGeometry {
    CoordinateSystem system = CoordinateSystem::dsc1;
    std::vector<Polyline> polylines;  // per sample (x copies for n-Gon), dataset order
    std::vector<AxisLine> axes;
    std::vector<Point> origins;  // one per copy
    std::vector<BlockOverlay> overlays;
    std::size_t copies = 1;

    /// Bounding box of polylines, axes and overlays.
    Rect bounds() const;
};

/// Unit direction of a DSC1 scaffold rotated `angle_deg` from vertical.
Point dsc1_direction(double angle_deg);

/// Polylines of one point of scaled values (one per n-Gon copy otherwise a
/// single entry). Nonlinear separators and ordering are applied here.
std::vector<std::vector<Point>> map_values(std::span<const double> scaled, const PlotConfig& config);

PlotGeometry map_pc(const Dataset& data, const PlotConfig& config);
PlotGeometry map_spc(const Dataset& data, const PlotConfig& config);
PlotGeometry map_dsc1(const Dataset& data, const PlotConfig& config);
PlotGeometry map_dsc2(const Dataset& data, const PlotConfig& config);
PlotGeometry map_ngon_dsc2(const Dataset& data, const PlotConfig& config);
/// Dispatches on config.system.
PlotGeometry map_plot(const Dataset& data, const PlotConfig& config);

/// Recovers scaled values from one polyline. Throws DimensionError when the
/// vertex count does not fit the config.
std::vector<double> reconstruct_polyline(const Polyline& line, const PlotConfig& config, std::size_t dims);

/// Scaled values per sample in order of first appearance (copy 0 for n-Gon).
std::vector<std::vector<double>> reconstruct(const PlotGeometry& geometry, const PlotConfig& config,
                                             std::size_t dims);

/// Boundary bands (and SPC/DSC2 boxes) for every block.
std::vector<BlockOverlay> hb_boundary_bands(const HyperblockSet& blocks, const PlotConfig& config);

/// Segment marking a threshold on an attribute, where the plot has a
/// dedicated place for it: PC axes, SPC panels, the first DSC2 pair, and the
/// first DSC1 scaffold. The threshold passes through the config's nonlinear
/// transform.
std::optional<std::pair<Point, Point>> separator_marker(const PlotConfig& config, std::size_t dims,
                                                        std::size_t attribute, double threshold);

}  // namespace glcviz
