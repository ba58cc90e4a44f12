#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "ppc/io.hpp"
#include "ppc/svg.hpp"

using namespace ppc;

namespace {

// y attribute of the axis tick label with the given text
double tick_label_y(const std::string& svg, const std::string& label) {
    const std::string needle = ">" + label + "</text>";
    std::size_t pos = 0;
    while ((pos = svg.find(needle, pos)) != std::string::npos) {
        const std::size_t line_start = svg.rfind("<text", pos);
        const std::string line = svg.substr(line_start, pos - line_start);
        if (line.find("text-anchor=\"end\"") != std::string::npos) {
            const std::size_t y_at = line.find(" y=\"");
            return std::stod(line.substr(y_at + 4));
        }
        ++pos;
    }
    REQUIRE(false);
    return 0.0;
}

}  // namespace

TEST_CASE("empty layer list still yields a valid document with axes") {
    PlotSpec spec;
    spec.title = "empty";
    const std::string svg = render_svg_string(spec);
    CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"") != std::string::npos);
    CHECK(svg.find("<line") != std::string::npos);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
}

TEST_CASE("rendering is byte-deterministic") {
    PlotSpec spec;
    spec.title = "determinism";
    Layer line;
    line.kind = Layer::Kind::Line;
    line.x = {0.0, 0.5, 1.0};
    line.y = {0.1, 0.7, 0.3};
    spec.layers.push_back(line);
    CHECK(render_svg_string(spec) == render_svg_string(spec));

    render_svg(spec, "render_test_a.svg");
    render_svg(spec, "render_test_b.svg");
    CHECK(read_file("render_test_a.svg") == read_file("render_test_b.svg"));
    std::remove("render_test_a.svg");
    std::remove("render_test_b.svg");
}

TEST_CASE("sqrt-label axis places tick 9 at three times the distance of tick 1") {
    PlotSpec spec;
    spec.y_scale = AxisScale::SqrtLabels;
    Layer pts;
    pts.kind = Layer::Kind::Points;
    pts.x = {0.0, 1.0};
    pts.y = {0.0, 16.0};
    spec.layers.push_back(pts);
    const std::string svg = render_svg_string(spec);
    const double y0 = tick_label_y(svg, "0");
    const double y1 = tick_label_y(svg, "1");
    const double y9 = tick_label_y(svg, "9");
    CHECK((y0 - y9) / (y0 - y1) == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("coordinates use fixed six-decimal precision") {
    PlotSpec spec;
    Layer pts;
    pts.kind = Layer::Kind::Points;
    pts.x = {1.0 / 3.0};
    pts.y = {2.0 / 3.0};
    spec.layers.push_back(pts);
    const std::string svg = render_svg_string(spec);
    // every circle coordinate has exactly six decimals
    const std::size_t cx = svg.find("cx=\"");
    REQUIRE(cx != std::string::npos);
    const std::string val = svg.substr(cx + 4, svg.find('"', cx + 4) - cx - 4);
    const std::size_t dot = val.find('.');
    REQUIRE(dot != std::string::npos);
    CHECK(val.size() - dot - 1 == 6);
    CHECK(svg.find("timestamp") == std::string::npos);
}

TEST_CASE("validation rejects non-finite coordinates and length mismatches") {
    PlotSpec spec;
    Layer bad;
    bad.kind = Layer::Kind::Line;
    bad.x = {0.0, 1.0};
    bad.y = {0.0, std::numeric_limits<double>::quiet_NaN()};
    spec.layers.push_back(bad);
    CHECK_THROWS(spec.validate());
    CHECK_THROWS(render_svg_string(spec));

    PlotSpec mismatch;
    Layer m;
    m.x = {0.0};
    m.y = {0.0, 1.0};
    mismatch.layers.push_back(m);
    CHECK_THROWS(mismatch.validate());
}

TEST_CASE("titles are XML-escaped") {
    PlotSpec spec;
    spec.title = "a < b & c";
    const std::string svg = render_svg_string(spec);
    CHECK(svg.find("a &lt; b &amp; c") != std::string::npos);
}

TEST_CASE("atomic writes leave no temp file behind") {
    PlotSpec spec;
    render_svg(spec, "render_test_atomic.svg");
    std::ifstream tmp("render_test_atomic.svg.tmp");
    CHECK_FALSE(tmp.good());
    std::ifstream out("render_test_atomic.svg");
    CHECK(out.good());
    out.close();
    std::remove("render_test_atomic.svg");
}
