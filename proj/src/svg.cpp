#include "ppc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ppc/io.hpp"

namespace ppc {

namespace {

constexpr double kMarginLeft = 62.0;
constexpr double kMarginRight = 16.0;
constexpr double kMarginTop = 34.0;
constexpr double kMarginBottom = 46.0;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string label_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
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

struct Range {
    double lo = 0.0;
    double hi = 1.0;
    bool seen = false;

    void add(double v) {
        if (!seen) {
            lo = hi = v;
            seen = true;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
};

double transform_y(double v, AxisScale scale) {
    return scale == AxisScale::SqrtLabels ? std::sqrt(std::max(v, 0.0)) : v;
}

// step of the form {1,2,5} x 10^k giving roughly five intervals
double nice_step(double range) {
    const double raw = range / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double step;
    if (frac <= 1.0)
        step = 1.0;
    else if (frac <= 2.0)
        step = 2.0;
    else if (frac <= 5.0)
        step = 5.0;
    else
        step = 10.0;
    return step * mag;
}

std::vector<double> ticks_for(double lo, double hi) {
    std::vector<double> out;
    if (!(hi > lo)) return {lo};
    const double step = nice_step(hi - lo);
    double t = std::ceil(lo / step - 1e-9) * step;
    for (; t <= hi + 1e-9 * step; t += step) out.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
    return out;
}

}  // namespace

std::string render_svg_string(const PlotSpec& spec) {
    spec.validate();

    Range xr, yr;
    for (const Layer& layer : spec.layers) {
        const double half = layer.kind == Layer::Kind::Bars ? layer.width / 2.0
                            : layer.kind == Layer::Kind::Dots ? layer.width
                                                              : 0.0;
        for (double v : layer.x) {
            xr.add(v - half);
            xr.add(v + half);
        }
        for (double v : layer.y) yr.add(transform_y(v, spec.y_scale));
        for (double v : layer.y2) yr.add(transform_y(v, spec.y_scale));
        if (layer.kind == Layer::Kind::Bars && layer.y2.empty() && !layer.y.empty())
            yr.add(transform_y(0.0, spec.y_scale));
    }
    if (!xr.seen) xr = {0.0, 1.0, true};
    if (!yr.seen) yr = {0.0, 1.0, true};
    if (xr.hi == xr.lo) {
        xr.lo -= 0.5;
        xr.hi += 0.5;
    }
    if (yr.hi == yr.lo) {
        yr.lo -= 0.5;
        yr.hi += 0.5;
    }
    const double xpad = 0.05 * (xr.hi - xr.lo);
    const double ypad = 0.05 * (yr.hi - yr.lo);
    const double x0 = xr.lo - xpad, x1 = xr.hi + xpad;
    const double y0 = spec.y_scale == AxisScale::SqrtLabels ? std::max(0.0, yr.lo - ypad) : yr.lo - ypad;
    const double y1 = yr.hi + ypad;

    const double pl = kMarginLeft, pr = spec.width - kMarginRight;
    const double pt = kMarginTop, pb = spec.height - kMarginBottom;
    auto px = [&](double v) { return pl + (v - x0) / (x1 - x0) * (pr - pl); };
    auto py = [&](double v) {
        return pb - (transform_y(v, spec.y_scale) - y0) / (y1 - y0) * (pb - pt);
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(spec.width)
        << "\" height=\"" << num(spec.height) << "\" viewBox=\"0 0 " << num(spec.width) << " "
        << num(spec.height) << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << num(spec.width) << "\" height=\"" << num(spec.height)
        << "\" fill=\"#ffffff\"/>\n";
    if (!spec.title.empty())
        svg << "<text x=\"" << num((pl + pr) / 2.0) << "\" y=\"" << num(kMarginTop - 12.0)
            << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">"
            << escape(spec.title) << "</text>\n";

    // axes
    svg << "<line x1=\"" << num(pl) << "\" y1=\"" << num(pb) << "\" x2=\"" << num(pr) << "\" y2=\""
        << num(pb) << "\" stroke=\"#2e3436\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << num(pl) << "\" y1=\"" << num(pt) << "\" x2=\"" << num(pl) << "\" y2=\""
        << num(pb) << "\" stroke=\"#2e3436\" stroke-width=\"1\"/>\n";

    for (double t : ticks_for(x0, x1)) {
        const double x = px(t);
        svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(pb) << "\" x2=\"" << num(x) << "\" y2=\""
            << num(pb + 5.0) << "\" stroke=\"#2e3436\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << num(x) << "\" y=\"" << num(pb + 18.0)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
            << label_num(t) << "</text>\n";
    }
    for (double t : ticks_for(y0, y1)) {
        // ticks live on the transformed axis; labels report the raw value
        const double y = pb - (t - y0) / (y1 - y0) * (pb - pt);
        const double raw = spec.y_scale == AxisScale::SqrtLabels ? t * t : t;
        svg << "<line x1=\"" << num(pl - 5.0) << "\" y1=\"" << num(y) << "\" x2=\"" << num(pl)
            << "\" y2=\"" << num(y) << "\" stroke=\"#2e3436\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << num(pl - 8.0) << "\" y=\"" << num(y + 4.0)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << label_num(raw)
            << "</text>\n";
    }
    if (!spec.x_label.empty())
        svg << "<text x=\"" << num((pl + pr) / 2.0) << "\" y=\"" << num(spec.height - 10.0)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
            << escape(spec.x_label) << "</text>\n";
    if (!spec.y_label.empty())
        svg << "<text x=\"14\" y=\"" << num((pt + pb) / 2.0)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
            << num((pt + pb) / 2.0) << ")\">" << escape(spec.y_label) << "</text>\n";

    svg << "<clipPath id=\"plotarea\"><rect x=\"" << num(pl) << "\" y=\"" << num(pt) << "\" width=\""
        << num(pr - pl) << "\" height=\"" << num(pb - pt) << "\"/></clipPath>\n";
    svg << "<g clip-path=\"url(#plotarea)\">\n";

    for (const Layer& layer : spec.layers) {
        svg << "<g";
        if (!layer.name.empty()) svg << " data-name=\"" << escape(layer.name) << "\"";
        svg << ">\n";
        const std::string op = num(layer.opacity);
        auto color_at = [&](std::size_t i) {
            return i < layer.flags.size() && layer.flags[i] ? std::string("#cc0000") : layer.color;
        };
        switch (layer.kind) {
            case Layer::Kind::Bars: {
                const double wpx = px(layer.width) - px(0.0);
                for (std::size_t i = 0; i < layer.x.size(); ++i) {
                    const double base = layer.y2.empty() ? 0.0 : layer.y2[i];
                    const double ya = py(layer.y[i]), yb = py(base);
                    svg << "<rect x=\"" << num(px(layer.x[i]) - wpx / 2.0) << "\" y=\""
                        << num(std::min(ya, yb)) << "\" width=\"" << num(wpx) << "\" height=\""
                        << num(std::abs(ya - yb)) << "\" fill=\"" << color_at(i) << "\" fill-opacity=\""
                        << op << "\" stroke=\"#5c7ea6\" stroke-width=\"0.5\"/>\n";
                }
                break;
            }
            case Layer::Kind::Line: {
                svg << "<polyline fill=\"none\" stroke=\"" << layer.color << "\" stroke-opacity=\"" << op
                    << "\" stroke-width=\"1.5\" points=\"";
                for (std::size_t i = 0; i < layer.x.size(); ++i) {
                    if (i) svg << ' ';
                    svg << num(px(layer.x[i])) << ',' << num(py(layer.y[i]));
                }
                svg << "\"/>\n";
                break;
            }
            case Layer::Kind::Points: {
                for (std::size_t i = 0; i < layer.x.size(); ++i)
                    svg << "<circle cx=\"" << num(px(layer.x[i])) << "\" cy=\"" << num(py(layer.y[i]))
                        << "\" r=\"3\" fill=\"" << color_at(i) << "\" fill-opacity=\"" << op << "\"/>\n";
                break;
            }
            case Layer::Kind::Intervals: {
                for (std::size_t i = 0; i < layer.x.size(); ++i)
                    svg << "<line x1=\"" << num(px(layer.x[i])) << "\" y1=\"" << num(py(layer.y[i]))
                        << "\" x2=\"" << num(px(layer.x[i])) << "\" y2=\"" << num(py(layer.y2[i]))
                        << "\" stroke=\"" << color_at(i) << "\" stroke-opacity=\"" << op
                        << "\" stroke-width=\"2\"/>\n";
                break;
            }
            case Layer::Kind::Ribbon: {
                svg << "<polygon fill=\"" << layer.color << "\" fill-opacity=\"" << op
                    << "\" stroke=\"none\" points=\"";
                for (std::size_t i = 0; i < layer.x.size(); ++i) {
                    if (i) svg << ' ';
                    svg << num(px(layer.x[i])) << ',' << num(py(layer.y[i]));
                }
                for (std::size_t i = layer.x.size(); i-- > 0;)
                    svg << ' ' << num(px(layer.x[i])) << ',' << num(py(layer.y2[i]));
                svg << "\"/>\n";
                break;
            }
            case Layer::Kind::Dots: {
                const double rpx = px(layer.width) - px(0.0);
                for (std::size_t i = 0; i < layer.x.size(); ++i)
                    svg << "<circle cx=\"" << num(px(layer.x[i])) << "\" cy=\"" << num(py(layer.y[i]))
                        << "\" r=\"" << num(rpx) << "\" fill=\"" << color_at(i) << "\" fill-opacity=\""
                        << op << "\" stroke=\"#5c7ea6\" stroke-width=\"0.5\"/>\n";
                break;
            }
        }
        svg << "</g>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

void render_svg(const PlotSpec& spec, const std::string& path) {
    atomic_write_file(path, render_svg_string(spec));
}

}  // namespace ppc
