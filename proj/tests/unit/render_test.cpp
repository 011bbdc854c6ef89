#include "fixtures.hpp"

#include "glcviz/error.hpp"
#include "glcviz/render.hpp"

#include <gtest/gtest.h>

#include <regex>
#include <set>

namespace glcviz {
namespace {

using testing::iris;

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

PlotGeometry iris_with_bands() {
    TreeParams p;
    p.max_depth = kUnlimitedDepth;
    const auto set = extract_hyperblocks(fit_tree(iris(), p), iris());
    PlotConfig c;
    c.attribute_order = {3, 2, 0, 1};
    auto g = map_dsc1(iris(), c);
    g.overlays = hb_boundary_bands(set, c);
    return g;
}

TEST(Svg, ByteIdenticalOnRepeat) {
    const auto g = iris_with_bands();
    RenderOverlays o;
    o.separators.push_back({{0, 0}, {1, 1}, "petal_width <= 0.8"});
    o.boxes.push_back({0.2, 0.2, 0.6, 0.9});
    const auto a = render_svg(g, o, {}, iris().classes());
    const auto b = render_svg(g, o, {}, iris().classes());
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0), 0u);
    EXPECT_EQ(count(a, "class=\"separator\""), 1u);
    EXPECT_EQ(count(a, "class=\"selection-box\""), 1u);
    EXPECT_NE(a.find("petal_width &lt;= 0.8"), std::string::npos);
}

TEST(Svg, IrisSamplesInThreeColours) {
    const auto svg = render_svg(map_dsc1(iris(), {}), {}, {}, iris().classes());
    EXPECT_EQ(count(svg, "<polyline class=\"sample\""), 150u);
    std::set<std::string> colours;
    const std::regex stroke("class=\"sample\" data-id=\"\\d+\" stroke=\"(#[0-9a-f]{6})\"");
    for (std::sregex_iterator it(svg.begin(), svg.end(), stroke), end; it != end; ++it) colours.insert((*it)[1]);
    EXPECT_EQ(colours, (std::set<std::string>{"#d62728", "#2ca02c", "#1f77b4"}));
}

TEST(Svg, BandsOnlyLayer) {
    const auto g = iris_with_bands();
    RenderSpec spec;
    spec.layers.samples = false;
    const auto svg = render_svg(g, {}, spec);
    EXPECT_EQ(count(svg, "class=\"sample\""), 0u);
    EXPECT_EQ(count(svg, "class=\"hb-band\""), 2 * g.overlays.size());
    spec.layers.hb_bands = false;
    EXPECT_EQ(count(render_svg(g, {}, spec), "hb-band"), 0u);
}

TEST(Svg, VerticesInsideCanvas) {
    RenderSpec spec;
    spec.width = 640;
    spec.height = 480;
    PlotConfig c;
    c.system = CoordinateSystem::dsc2;
    const auto svg = render_svg(map_dsc2(iris(), c), {}, spec);
    const std::regex pair("(-?\\d+\\.\\d+),(-?\\d+\\.\\d+)");
    std::size_t seen = 0;
    for (std::sregex_iterator it(svg.begin(), svg.end(), pair), end; it != end; ++it, ++seen) {
        const double x = std::stod((*it)[1]);
        const double y = std::stod((*it)[2]);
        EXPECT_GE(x, spec.margin - 0.01);
        EXPECT_LE(x, spec.width - spec.margin + 0.01);
        EXPECT_GE(y, spec.margin - 0.01);
        EXPECT_LE(y, spec.height - spec.margin + 0.01);
    }
    EXPECT_EQ(seen, 150u * 3u);
}

TEST(Svg, YAxisPointsUp) {
    PlotGeometry g;
    g.polylines = {Polyline{0, 0, 0, {{0, 0}, {1, 1}}}};
    RenderSpec spec;
    spec.width = 200;
    spec.height = 200;
    spec.margin = 10;
    const auto svg = render_svg(g, {}, spec);
    EXPECT_NE(svg.find("points=\"10.00,190.00 190.00,10.00\""), std::string::npos) << svg;
}

TEST(Svg, EmptyGeometryThrows) { EXPECT_THROW(render_svg(PlotGeometry{}, {}, {}), Error); }

TEST(Spec, Validation) {
    RenderSpec s;
    EXPECT_NO_THROW(s.validate(3));
    s.width = 40;
    EXPECT_THROW(s.validate(3), ConfigError);
    s = {};
    s.line_opacity = 1.5;
    EXPECT_THROW(s.validate(3), ConfigError);
    s = {};
    s.palette = {"#000000"};
    EXPECT_THROW(s.validate(2), ConfigError);
    PlotGeometry g;
    g.polylines = {Polyline{0, 1, 0, {{0, 0}, {1, 1}}}};
    EXPECT_THROW(render_svg(g, {}, s), ConfigError);
}

TEST(Svg, EscapesClassNames) {
    PlotGeometry g;
    g.polylines = {Polyline{0, 0, 0, {{0, 0}, {1, 1}}}};
    const std::vector<std::string> names{"a<b & \"c\""};
    EXPECT_NE(render_svg(g, {}, {}, names).find("a&lt;b &amp; &quot;c&quot;"), std::string::npos);
}

}  // namespace
}  // namespace glcviz
