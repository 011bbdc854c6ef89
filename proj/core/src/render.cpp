#include "glcviz/render.hpp"

#include "glcviz/error.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace glcviz {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

class Viewport {
public:
    Viewport(Rect bounds, const RenderSpec& spec) : bounds_(bounds), height_(spec.height), margin_(spec.margin) {
        const double avail_w = spec.width - 2.0 * spec.margin;
        const double avail_h = spec.height - 2.0 * spec.margin;
        const double bw = std::max(bounds.x_max - bounds.x_min, 1e-12);
        const double bh = std::max(bounds.y_max - bounds.y_min, 1e-12);
        scale_ = std::min(avail_w / bw, avail_h / bh);
        pad_x_ = (avail_w - bw * scale_) / 2.0;
        pad_y_ = (avail_h - bh * scale_) / 2.0;
    }

    Point map(Point p) const {
        return {margin_ + pad_x_ + (p.x - bounds_.x_min) * scale_,
                height_ - margin_ - pad_y_ - (p.y - bounds_.y_min) * scale_};
    }

private:
    Rect bounds_;
    double height_;
    double margin_;
    double scale_ = 1.0;
    double pad_x_ = 0.0;
    double pad_y_ = 0.0;
};

std::string points(const std::vector<Point>& vertices, const Viewport& vp) {
    std::string out;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const auto p = vp.map(vertices[i]);
        if (i) out += ' ';
        out += num(p.x);
        out += ',';
        out += num(p.y);
    }
    return out;
}

const std::string& color(const RenderSpec& spec, int label) {
    return spec.palette.at(static_cast<std::size_t>(label) % spec.palette.size());
}

}  // namespace

std::vector<std::string> default_palette() {
    return {"#d62728", "#2ca02c", "#1f77b4", "#e69f00", "#56b4e9", "#009e73", "#f0e442", "#0072b2", "#d55e00", "#cc79a7"};
}

void RenderSpec::validate(std::size_t class_count) const {
    if (width <= 2 * margin || height <= 2 * margin) throw ConfigError("canvas must exceed twice the margin");
    if (margin < 0) throw ConfigError("margin must be non-negative");
    if (!(line_opacity >= 0.0 && line_opacity <= 1.0)) throw ConfigError("line opacity must lie in [0,1]");
    if (palette.size() < std::max<std::size_t>(class_count, 1)) throw ConfigError("palette has fewer colours than classes");
}

std::string render_svg(const PlotGeometry& geometry, const RenderOverlays& overlays, const RenderSpec& spec,
                       std::span<const std::string> class_names) {
    if (geometry.polylines.empty()) throw Error("empty geometry");
    int max_label = 0;
    for (const auto& l : geometry.polylines) max_label = std::max(max_label, l.label);
    spec.validate(std::max<std::size_t>(class_names.size(), static_cast<std::size_t>(max_label) + 1));

    Rect bounds = geometry.bounds();
    for (const auto& s : overlays.separators) {
        bounds.expand(s.from);
        bounds.expand(s.to);
    }
    for (const auto& b : overlays.boxes) {
        bounds.expand({b.x_min, b.y_min});
        bounds.expand({b.x_max, b.y_max});
    }
    for (const auto& o : geometry.overlays) {
        for (const auto& b : o.boxes) {
            bounds.expand({b.x_min, b.y_min});
            bounds.expand({b.x_max, b.y_max});
        }
    }
    const Viewport vp(bounds, spec);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
        << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height << "\" fill=\"#ffffff\"/>\n";

    if (spec.layers.axes) {
        svg << "<g class=\"axes\" stroke=\"#444444\" stroke-width=\"1\">\n";
        for (const auto& a : geometry.axes) {
            const auto p = vp.map(a.from);
            const auto q = vp.map(a.to);
            svg << "<line x1=\"" << num(p.x) << "\" y1=\"" << num(p.y) << "\" x2=\"" << num(q.x) << "\" y2=\""
                << num(q.y) << "\"><title>" << escape(a.label) << "</title></line>\n";
        }
        svg << "</g>\n";
    }

    if (spec.layers.samples) {
        std::vector<std::size_t> order(geometry.polylines.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const auto& la = geometry.polylines[a];
            const auto& lb = geometry.polylines[b];
            if (la.label != lb.label) return la.label < lb.label;
            if (la.sample_id != lb.sample_id) return la.sample_id < lb.sample_id;
            return la.copy < lb.copy;
        });
        svg << "<g class=\"samples\" fill=\"none\" stroke-width=\"1\" stroke-opacity=\"" << num(spec.line_opacity)
            << "\">\n";
        for (std::size_t i : order) {
            const auto& l = geometry.polylines[i];
            svg << "<polyline class=\"sample\" data-id=\"" << l.sample_id << "\" stroke=\"" << color(spec, l.label)
                << "\" points=\"" << points(l.vertices, vp) << "\"/>\n";
        }
        svg << "</g>\n";
    }

    if (spec.layers.hb_bands && !geometry.overlays.empty()) {
        svg << "<g class=\"hyperblocks\" fill=\"none\" stroke-width=\"2\">\n";
        for (const auto& o : geometry.overlays) {
            const auto& c = color(spec, o.label);
            svg << "<polyline class=\"hb-band\" data-block=\"" << o.block << "\" stroke=\"" << c << "\" points=\""
                << points(o.lower.vertices, vp) << "\"/>\n";
            svg << "<polyline class=\"hb-band\" data-block=\"" << o.block << "\" stroke=\"" << c << "\" points=\""
                << points(o.upper.vertices, vp) << "\"/>\n";
            for (const auto& b : o.boxes) {
                const auto p = vp.map({b.x_min, b.y_max});
                const auto q = vp.map({b.x_max, b.y_min});
                svg << "<rect class=\"hb-box\" data-block=\"" << o.block << "\" x=\"" << num(p.x) << "\" y=\""
                    << num(p.y) << "\" width=\"" << num(q.x - p.x) << "\" height=\"" << num(q.y - p.y)
                    << "\" stroke=\"" << c << "\" fill=\"" << c << "\" fill-opacity=\"0.08\"/>\n";
            }
        }
        svg << "</g>\n";
    }

    if (spec.layers.separators && !overlays.separators.empty()) {
        svg << "<g class=\"separators\" stroke=\"#000000\" stroke-width=\"2\" stroke-dasharray=\"6 3\">\n";
        for (const auto& s : overlays.separators) {
            const auto p = vp.map(s.from);
            const auto q = vp.map(s.to);
            svg << "<line class=\"separator\" x1=\"" << num(p.x) << "\" y1=\"" << num(p.y) << "\" x2=\"" << num(q.x)
                << "\" y2=\"" << num(q.y) << "\"><title>" << escape(s.label) << "</title></line>\n";
        }
        svg << "</g>\n";
    }

    if (spec.layers.boxes && !overlays.boxes.empty()) {
        svg << "<g class=\"selection\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\">\n";
        for (const auto& b : overlays.boxes) {
            const auto p = vp.map({b.x_min, b.y_max});
            const auto q = vp.map({b.x_max, b.y_min});
            svg << "<rect class=\"selection-box\" x=\"" << num(p.x) << "\" y=\"" << num(p.y) << "\" width=\""
                << num(q.x - p.x) << "\" height=\"" << num(q.y - p.y) << "\"/>\n";
        }
        svg << "</g>\n";
    }

    if (!class_names.empty()) {
        svg << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
        for (std::size_t c = 0; c < class_names.size(); ++c) {
            svg << "<text x=\"" << spec.margin << "\" y=\"" << spec.margin + 14 * static_cast<int>(c + 1)
                << "\" fill=\"" << color(spec, static_cast<int>(c)) << "\">" << escape(class_names[c]) << "</text>\n";
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace glcviz
