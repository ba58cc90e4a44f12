#include "ppc/plot.hpp"

#include <cmath>
#include <stdexcept>

namespace ppc {

void PlotSpec::validate() const {
    if (!(width > 0.0 && height > 0.0)) throw std::invalid_argument("plot dimensions must be positive");
    auto check = [](const std::vector<double>& v, const char* what) {
        for (double x : v)
            if (!std::isfinite(x)) throw std::invalid_argument(std::string("non-finite ") + what);
    };
    for (const Layer& layer : layers) {
        check(layer.x, "x coordinate");
        check(layer.y, "y coordinate");
        check(layer.y2, "y2 coordinate");
        if (layer.x.size() != layer.y.size())
            throw std::invalid_argument("layer '" + layer.name + "' has mismatched x/y lengths");
        if (!layer.y2.empty() && layer.y2.size() != layer.y.size())
            throw std::invalid_argument("layer '" + layer.name + "' has mismatched y2 length");
        if (!std::isfinite(layer.width) || layer.width < 0.0)
            throw std::invalid_argument("layer '" + layer.name + "' has a bad width");
    }
}

}  // namespace ppc
