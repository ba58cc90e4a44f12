#pragma once

#include <string>
#include <vector>

namespace ppc {

// Geometry-level plot description consumed by the SVG renderer. All
// coordinates are data coordinates; layer order defines z-order.
struct Layer {
    enum class Kind { Bars, Line, Points, Intervals, Ribbon, Dots };

    Kind kind = Kind::Line;
    std::string name;
    std::string color = "#3465a4";
    double opacity = 1.0;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> y2;   // interval upper / bar base, when the kind needs one
    double width = 0.0;       // bar width or dot radius, in x units
    std::vector<bool> flags;  // per-element highlight
};

enum class AxisScale { Linear, SqrtLabels };

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    AxisScale y_scale = AxisScale::Linear;
    std::vector<Layer> layers;
    double width = 640.0;
    double height = 400.0;

    void validate() const;  // throws on non-finite coordinates
};

}  // namespace ppc
