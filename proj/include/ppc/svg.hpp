#pragma once

#include <string>

#include "ppc/plot.hpp"

namespace ppc {

// Renders the spec as a standalone SVG 1.1 document. Output is deterministic:
// coordinates at fixed 6-decimal precision, no timestamps, and the file is
// written atomically (temp + rename).
void render_svg(const PlotSpec& spec, const std::string& path);

std::string render_svg_string(const PlotSpec& spec);

}  // namespace ppc
