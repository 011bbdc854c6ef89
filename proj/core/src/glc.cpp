#include "glcviz/glc.hpp"

#include "glcviz/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace glcviz {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kMarkerHalfLength = 0.15;

bool is_paired(CoordinateSystem s) {
    return s == CoordinateSystem::spc || s == CoordinateSystem::dsc2 || s == CoordinateSystem::ngon_dsc2;
}

void validate_order(const std::vector<std::size_t>& order, std::size_t dims) {
    if (order.empty()) return;
    if (order.size() != dims) {
        throw ConfigError("attribute order has " + std::to_string(order.size()) + " entries, dataset has " +
                          std::to_string(dims) + " attributes");
    }
    std::vector<bool> seen(dims, false);
    for (std::size_t a : order) {
        if (a >= dims || seen[a]) throw ConfigError("attribute order is not a permutation");
        seen[a] = true;
    }
}

void validate_weights(const std::vector<double>& weights, std::size_t dims) {
    if (weights.empty()) return;
    if (weights.size() != dims / 2) {
        throw ConfigError("expected " + std::to_string(dims / 2) + " pair weights, got " +
                          std::to_string(weights.size()));
    }
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("pair weights must be positive");
    }
}

std::vector<std::size_t> identity_or(const std::vector<std::size_t>& order, std::size_t dims) {
    if (!order.empty()) return order;
    std::vector<std::size_t> id(dims);
    for (std::size_t i = 0; i < dims; ++i) id[i] = i;
    return id;
}

std::vector<double> ones_or(const std::vector<double>& weights, std::size_t dims) {
    return weights.empty() ? std::vector<double>(dims / 2, 1.0) : weights;
}

std::vector<double> apply_nonlinear(std::span<const double> scaled, const PlotConfig& config) {
    std::vector<double> out(scaled.begin(), scaled.end());
    for (const auto& [attr, sep] : config.nonlinear) {
        if (attr < out.size()) out[attr] = sep.apply(out[attr]);
    }
    return out;
}

double invert_nonlinear(double v, std::size_t attr, const PlotConfig& config) {
    const auto it = config.nonlinear.find(attr);
    return it == config.nonlinear.end() ? v : it->second.invert(v);
}

std::vector<Point> dsc2_vertices(const std::vector<double>& t, const std::vector<std::size_t>& order,
                                 const std::vector<double>& weights, Point origin) {
    std::vector<Point> v;
    v.reserve(order.size() / 2 + 1);
    Point p = origin;
    v.push_back(p);
    for (std::size_t j = 0; j < order.size() / 2; ++j) {
        p.x += weights[j] * t[order[2 * j]];
        p.y += weights[j] * t[order[2 * j + 1]];
        v.push_back(p);
    }
    return v;
}

std::vector<double> dsc2_values(const std::vector<Point>& v, const std::vector<std::size_t>& order,
                                const std::vector<double>& weights, std::size_t dims) {
    if (v.size() != dims / 2 + 1) throw DimensionError("DSC2 polyline vertex count does not match config");
    std::vector<double> t(dims);
    for (std::size_t j = 0; j < dims / 2; ++j) {
        t[order[2 * j]] = (v[j + 1].x - v[j].x) / weights[j];
        t[order[2 * j + 1]] = (v[j + 1].y - v[j].y) / weights[j];
    }
    return t;
}

std::vector<Point> ngon_origins(const PlotConfig& config) {
    const std::size_t k = config.ngon_vertices.size();
    std::vector<Point> origins;
    for (std::size_t i = 0; i < k; ++i) {
        const double angle = (90.0 + 360.0 * static_cast<double>(i) / static_cast<double>(k)) * kDegToRad;
        origins.push_back({config.ngon_radius * std::cos(angle), config.ngon_radius * std::sin(angle)});
    }
    return origins;
}

Rect span_rect(Point a, Point b) {
    return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
}

const std::string& attr_name(const Dataset& data, std::size_t a) { return data.attributes().at(a).name; }

std::vector<AxisLine> scaffold_axes(const Dataset& data, const PlotConfig& config) {
    const std::size_t n = data.dims();
    const auto order = config.resolved_order(n);
    std::vector<AxisLine> axes;
    switch (config.system) {
        case CoordinateSystem::pc:
            for (std::size_t i = 0; i < n; ++i) {
                axes.push_back({{static_cast<double>(i), 0.0}, {static_cast<double>(i), 1.0}, attr_name(data, order[i])});
            }
            break;
        case CoordinateSystem::spc:
            for (std::size_t j = 0; j < n / 2; ++j) {
                const double off = static_cast<double>(j) * config.panel_spacing;
                axes.push_back({{off, 0.0}, {off + 1.0, 0.0}, attr_name(data, order[2 * j])});
                axes.push_back({{off, 0.0}, {off, 1.0}, attr_name(data, order[2 * j + 1])});
            }
            break;
        case CoordinateSystem::dsc1: {
            const auto first = dsc1_direction(config.first_angle);
            const auto rest = dsc1_direction(config.rest_angle);
            axes.push_back({{0.0, 0.0}, first, attr_name(data, order[0])});
            if (n > 1) axes.push_back({{0.0, 0.0}, rest, "remaining attributes"});
            break;
        }
        case CoordinateSystem::dsc2: {
            const double w = config.resolved_weights(n).at(0);
            axes.push_back({{0.0, 0.0}, {w, 0.0}, attr_name(data, order[0])});
            axes.push_back({{0.0, 0.0}, {0.0, w}, attr_name(data, order[1])});
            break;
        }
        case CoordinateSystem::ngon_dsc2: {
            const auto origins = ngon_origins(config);
            for (std::size_t i = 0; i < origins.size(); ++i) {
                const auto& vx = config.ngon_vertices[i];
                const auto vorder = identity_or(vx.attribute_order, n);
                const double w = ones_or(vx.pair_weights, n).at(0);
                const Point o = origins[i];
                axes.push_back({o, {o.x + w, o.y}, attr_name(data, vorder[0])});
                axes.push_back({o, {o.x, o.y + w}, attr_name(data, vorder[1])});
                axes.push_back({o, origins[(i + 1) % origins.size()], ""});
            }
            break;
        }
    }
    return axes;
}

PlotGeometry map_with(const Dataset& data, PlotConfig config, CoordinateSystem system) {
    config.system = system;
    config.validate(data.dims());
    PlotGeometry g;
    g.system = system;
    g.axes = scaffold_axes(data, config);
    if (system == CoordinateSystem::ngon_dsc2) {
        g.origins = ngon_origins(config);
        g.copies = g.origins.size();
    } else {
        g.origins = {Point{}};
    }
    g.polylines.reserve(data.size() * g.copies);
    std::vector<std::vector<std::vector<Point>>> per_sample;
    per_sample.reserve(data.size());
    for (const auto& s : data.samples()) per_sample.push_back(map_values(s.scaled, config));
    for (std::size_t c = 0; c < g.copies; ++c) {
        for (std::size_t i = 0; i < data.size(); ++i) {
            const auto& s = data.samples()[i];
            g.polylines.push_back({s.id, s.label, static_cast<int>(c), std::move(per_sample[i][c])});
        }
    }
    return g;
}

}  // namespace

std::string to_string(CoordinateSystem system) {
    switch (system) {
        case CoordinateSystem::pc: return "pc";
        case CoordinateSystem::spc: return "spc";
        case CoordinateSystem::dsc1: return "dsc1";
        case CoordinateSystem::dsc2: return "dsc2";
        case CoordinateSystem::ngon_dsc2: return "ngon";
    }
    return "unknown";
}

CoordinateSystem coordinate_system_from_string(std::string_view text) {
    if (text == "pc") return CoordinateSystem::pc;
    if (text == "spc") return CoordinateSystem::spc;
    if (text == "dsc1") return CoordinateSystem::dsc1;
    if (text == "dsc2") return CoordinateSystem::dsc2;
    if (text == "ngon" || text == "ngon-dsc2") return CoordinateSystem::ngon_dsc2;
    throw ConfigError("unknown coordinate system '" + std::string(text) + "'");
}

void Rect::expand(Point p) {
    x_min = std::min(x_min, p.x);
    y_min = std::min(y_min, p.y);
    x_max = std::max(x_max, p.x);
    y_max = std::max(y_max, p.y);
}

void NonlinearSeparator::validate() const {
    if (!(position > 0.0 && position < 1.0)) throw ConfigError("separator position must lie strictly inside (0,1)");
    if (!(target > 0.0 && target < 1.0)) throw ConfigError("separator target must lie strictly inside (0,1)");
}

double NonlinearSeparator::apply(double v) const {
    if (v <= position) return v * target / position;
    return target + (v - position) * (1.0 - target) / (1.0 - position);
}

double NonlinearSeparator::invert(double v) const {
    if (v <= target) return v * position / target;
    return position + (v - target) * (1.0 - position) / (1.0 - target);
}

std::vector<double> nonlinear_scale_attribute(std::span<const double> values, double s, double t) {
    const NonlinearSeparator sep{s, t};
    sep.validate();
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) {
        if (v < -kScaleTolerance || v > 1.0 + kScaleTolerance) throw RangeError("value outside [0,1]");
        out.push_back(sep.apply(v));
    }
    return out;
}

void PlotConfig::validate(std::size_t dims) const {
    if (dims == 0) throw ConfigError("dataset has no attributes");
    validate_order(attribute_order, dims);
    for (const auto& [attr, sep] : nonlinear) {
        if (attr >= dims) throw ConfigError("nonlinear separator on unknown attribute " + std::to_string(attr));
        sep.validate();
    }
    if (is_paired(system) && dims % 2 != 0) {
        throw DimensionError("paired coordinates need an even number of attributes (" + std::to_string(dims) +
                             " given); duplicate or drop an attribute");
    }
    switch (system) {
        case CoordinateSystem::dsc1:
            for (double a : {first_angle, rest_angle}) {
                if (!(a > -90.0 && a < 0.0)) {
                    throw ConfigError("DSC1 rotation must lie in (-90, 0) degrees from vertical");
                }
            }
            break;
        case CoordinateSystem::dsc2:
            validate_weights(pair_weights, dims);
            break;
        case CoordinateSystem::ngon_dsc2:
            if (ngon_vertices.size() < 3) throw ConfigError("n-Gon layout needs at least 3 vertices");
            if (!(ngon_radius > 0.0)) throw ConfigError("n-Gon radius must be positive");
            for (const auto& v : ngon_vertices) {
                validate_order(v.attribute_order, dims);
                validate_weights(v.pair_weights, dims);
            }
            break;
        case CoordinateSystem::spc:
            if (!(panel_spacing > 0.0)) throw ConfigError("panel spacing must be positive");
            break;
        case CoordinateSystem::pc:
            break;
    }
}

std::vector<std::size_t> PlotConfig::resolved_order(std::size_t dims) const { return identity_or(attribute_order, dims); }

std::vector<double> PlotConfig::resolved_weights(std::size_t dims) const { return ones_or(pair_weights, dims); }

Rect PlotGeometry::bounds() const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    Rect r{inf, inf, -inf, -inf};
    for (const auto& line : polylines) {
        for (const auto& p : line.vertices) r.expand(p);
    }
    for (const auto& a : axes) {
        r.expand(a.from);
        r.expand(a.to);
    }
    for (const auto& o : overlays) {
        for (const auto& p : o.lower.vertices) r.expand(p);
        for (const auto& p : o.upper.vertices) r.expand(p);
    }
    if (r.x_min > r.x_max) return Rect{};
    return r;
}

Point dsc1_direction(double angle_deg) {
    const double a = (90.0 + angle_deg) * kDegToRad;
    return {std::cos(a), std::sin(a)};
}

std::vector<std::vector<Point>> map_values(std::span<const double> scaled, const PlotConfig& config) {
    const std::size_t n = scaled.size();
    const auto t = apply_nonlinear(scaled, config);
    const auto order = config.resolved_order(n);
    switch (config.system) {
        case CoordinateSystem::pc: {
            std::vector<Point> v;
            v.reserve(n);
            for (std::size_t i = 0; i < n; ++i) v.push_back({static_cast<double>(i), t[order[i]]});
            return {v};
        }
        case CoordinateSystem::spc: {
            std::vector<Point> v;
            v.reserve(n / 2);
            for (std::size_t j = 0; j < n / 2; ++j) {
                v.push_back({static_cast<double>(j) * config.panel_spacing + t[order[2 * j]], t[order[2 * j + 1]]});
            }
            return {v};
        }
        case CoordinateSystem::dsc1: {
            const auto first = dsc1_direction(config.first_angle);
            const auto rest = dsc1_direction(config.rest_angle);
            std::vector<Point> v;
            v.reserve(n + 1);
            Point p{};
            v.push_back(p);
            for (std::size_t i = 0; i < n; ++i) {
                const Point& u = i == 0 ? first : rest;
                p.x += u.x * t[order[i]];
                p.y += u.y * t[order[i]];
                v.push_back(p);
            }
            return {v};
        }
        case CoordinateSystem::dsc2:
            return {dsc2_vertices(t, order, config.resolved_weights(n), Point{})};
        case CoordinateSystem::ngon_dsc2: {
            const auto origins = ngon_origins(config);
            std::vector<std::vector<Point>> out;
            for (std::size_t i = 0; i < origins.size(); ++i) {
                const auto& vx = config.ngon_vertices[i];
                out.push_back(dsc2_vertices(t, identity_or(vx.attribute_order, n), ones_or(vx.pair_weights, n), origins[i]));
            }
            return out;
        }
    }
    throw ConfigError("unknown coordinate system");
}

PlotGeometry map_pc(const Dataset& data, const PlotConfig& config) { return map_with(data, config, CoordinateSystem::pc); }
PlotGeometry map_spc(const Dataset& data, const PlotConfig& config) { return map_with(data, config, CoordinateSystem::spc); }
PlotGeometry map_dsc1(const Dataset& data, const PlotConfig& config) { return map_with(data, config, CoordinateSystem::dsc1); }
PlotGeometry map_dsc2(const Dataset& data, const PlotConfig& config) { return map_with(data, config, CoordinateSystem::dsc2); }
PlotGeometry map_ngon_dsc2(const Dataset& data, const PlotConfig& config) {
    return map_with(data, config, CoordinateSystem::ngon_dsc2);
}
PlotGeometry map_plot(const Dataset& data, const PlotConfig& config) { return map_with(data, config, config.system); }

std::vector<double> reconstruct_polyline(const Polyline& line, const PlotConfig& config, std::size_t dims) {
    const auto order = config.resolved_order(dims);
    const auto& v = line.vertices;
    std::vector<double> t(dims);
    switch (config.system) {
        case CoordinateSystem::pc:
            if (v.size() != dims) throw DimensionError("PC polyline vertex count does not match config");
            for (std::size_t i = 0; i < dims; ++i) t[order[i]] = v[i].y;
            break;
        case CoordinateSystem::spc:
            if (v.size() != dims / 2) throw DimensionError("SPC polyline vertex count does not match config");
            for (std::size_t j = 0; j < dims / 2; ++j) {
                t[order[2 * j]] = v[j].x - static_cast<double>(j) * config.panel_spacing;
                t[order[2 * j + 1]] = v[j].y;
            }
            break;
        case CoordinateSystem::dsc1: {
            if (v.size() != dims + 1) throw DimensionError("DSC1 polyline vertex count does not match config");
            const auto first = dsc1_direction(config.first_angle);
            const auto rest = dsc1_direction(config.rest_angle);
            for (std::size_t i = 0; i < dims; ++i) {
                const Point& u = i == 0 ? first : rest;
                t[order[i]] = (v[i + 1].x - v[i].x) * u.x + (v[i + 1].y - v[i].y) * u.y;
            }
            break;
        }
        case CoordinateSystem::dsc2:
            t = dsc2_values(v, order, config.resolved_weights(dims), dims);
            break;
        case CoordinateSystem::ngon_dsc2: {
            const auto c = static_cast<std::size_t>(line.copy);
            if (c >= config.ngon_vertices.size()) throw DimensionError("n-Gon copy index out of range");
            const auto& vx = config.ngon_vertices[c];
            t = dsc2_values(v, identity_or(vx.attribute_order, dims), ones_or(vx.pair_weights, dims), dims);
            break;
        }
    }
    for (std::size_t a = 0; a < dims; ++a) t[a] = invert_nonlinear(t[a], a, config);
    return t;
}

std::vector<std::vector<double>> reconstruct(const PlotGeometry& geometry, const PlotConfig& config, std::size_t dims) {
    if (geometry.system != config.system) throw DimensionError("geometry and config use different coordinate systems");
    std::vector<std::vector<double>> out;
    for (const auto& line : geometry.polylines) {
        if (line.copy != 0) continue;
        out.push_back(reconstruct_polyline(line, config, dims));
    }
    return out;
}

std::vector<BlockOverlay> hb_boundary_bands(const HyperblockSet& blocks, const PlotConfig& config) {
    std::vector<BlockOverlay> out;
    if (blocks.blocks.empty()) return out;
    config.validate(blocks.blocks.front().dims());
    const bool boxed = config.system == CoordinateSystem::spc || config.system == CoordinateSystem::dsc2 ||
                       config.system == CoordinateSystem::ngon_dsc2;
    for (std::size_t b = 0; b < blocks.blocks.size(); ++b) {
        const auto& block = blocks.blocks[b];
        auto lower = map_values(block.lower, config);
        auto upper = map_values(block.upper, config);
        for (std::size_t c = 0; c < lower.size(); ++c) {
            BlockOverlay o;
            o.block = b;
            o.label = block.majority_class;
            o.copy = static_cast<int>(c);
            o.lower = {-1, block.majority_class, o.copy, std::move(lower[c])};
            o.upper = {-1, block.majority_class, o.copy, std::move(upper[c])};
            if (boxed) {
                // SPC vertices are the pair points themselves; DSC2 vertex 0 is the origin.
                const std::size_t start = config.system == CoordinateSystem::spc ? 0 : 1;
                for (std::size_t i = start; i < o.lower.vertices.size(); ++i) {
                    o.boxes.push_back(span_rect(o.lower.vertices[i], o.upper.vertices[i]));
                }
            }
            out.push_back(std::move(o));
        }
    }
    return out;
}

std::optional<std::pair<Point, Point>> separator_marker(const PlotConfig& config, std::size_t dims,
                                                        std::size_t attribute, double threshold) {
    if (attribute >= dims) throw DimensionError("separator attribute out of range");
    const auto order = config.resolved_order(dims);
    const auto pos = static_cast<std::size_t>(std::find(order.begin(), order.end(), attribute) - order.begin());
    const auto it = config.nonlinear.find(attribute);
    const double t = it == config.nonlinear.end() ? threshold : it->second.apply(threshold);

    switch (config.system) {
        case CoordinateSystem::pc: {
            const double x = static_cast<double>(pos);
            return std::pair{Point{x - kMarkerHalfLength, t}, Point{x + kMarkerHalfLength, t}};
        }
        case CoordinateSystem::spc: {
            const double off = static_cast<double>(pos / 2) * config.panel_spacing;
            if (pos % 2 == 0) return std::pair{Point{off + t, 0.0}, Point{off + t, 1.0}};
            return std::pair{Point{off, t}, Point{off + 1.0, t}};
        }
        case CoordinateSystem::dsc2: {
            if (pos >= 2) return std::nullopt;
            const double w = config.resolved_weights(dims).at(0);
            if (pos == 0) return std::pair{Point{w * t, 0.0}, Point{w * t, w}};
            return std::pair{Point{0.0, w * t}, Point{w, w * t}};
        }
        case CoordinateSystem::dsc1: {
            if (pos != 0) return std::nullopt;
            const auto u = dsc1_direction(config.first_angle);
            const Point c{u.x * t, u.y * t};
            const Point normal{-u.y * kMarkerHalfLength, u.x * kMarkerHalfLength};
            return std::pair{Point{c.x - normal.x, c.y - normal.y}, Point{c.x + normal.x, c.y + normal.y}};
        }
        case CoordinateSystem::ngon_dsc2:
            return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace glcviz
