#pragma once

#include <string>
#include <vector>

#include "chainform/frame.hpp"
#include "chainform/geometry.hpp"

namespace chainform {

struct SvgStyle {
    double stroke_width = 1.0;
    double driven_radius = 2.0;
    std::string chain_color = "#1f4e79";
    std::string driven_color = "#c0392b";
    std::string overlay_color = "#999999";
    std::vector<Polyline> overlays;  ///< target shapes drawn dashed beneath the chains
};

/// SVG 1.1 document of one frame. One user unit is one micrometre, y points
/// up, and the view box fits the content with a 5% margin. Coordinates are
/// written exactly as stored in the frame.
std::string render_svg(const FrameRecord& frame, const SvgStyle& style = {});

}  // namespace chainform
