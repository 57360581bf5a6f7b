#include "chainform/svg.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "chainform/trajectory.hpp"

namespace chainform {

namespace {

void append_points(std::ostringstream& out, const std::vector<Point2>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out << (i ? " " : "") << format_exact(pts[i].x) << ',' << format_exact(pts[i].y);
    }
}

void append_path(std::ostringstream& out, const std::vector<Point2>& pts, const std::string& attrs) {
    if (pts.size() == 2) {
        out << "    <line x1=\"" << format_exact(pts[0].x) << "\" y1=\"" << format_exact(pts[0].y) << "\" x2=\""
            << format_exact(pts[1].x) << "\" y2=\"" << format_exact(pts[1].y) << "\" " << attrs << "/>\n";
    } else {
        out << "    <polyline points=\"";
        append_points(out, pts);
        out << "\" " << attrs << "/>\n";
    }
}

}  // namespace

std::string render_svg(const FrameRecord& frame, const SvgStyle& style) {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = min_x;
    double max_x = -min_x;
    double max_y = -min_x;
    const auto grow = [&](const Point2& p) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    };
    for (const auto& c : frame.chains) std::for_each(c.points.begin(), c.points.end(), grow);
    for (const auto& o : style.overlays) std::for_each(o.begin(), o.end(), grow);
    if (!(min_x <= max_x)) {
        min_x = min_y = 0.0;
        max_x = max_y = 1.0;
    }
    const double span = std::max({max_x - min_x, max_y - min_y, 1.0});
    const double margin = 0.05 * span;
    const double w = max_x - min_x + 2 * margin;
    const double h = max_y - min_y + 2 * margin;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << format_decimal(min_x - margin) << ' '
        << format_decimal(-(max_y + margin)) << ' ' << format_decimal(w) << ' ' << format_decimal(h) << "\" width=\""
        << format_decimal(w) << "\" height=\"" << format_decimal(h) << "\">\n"
        << "  <title>frame " << frame.frame_index << (frame.quiescent ? " (quiescent)" : "") << "</title>\n"
        << "  <g transform=\"scale(1,-1)\">\n";

    const std::string sw = format_exact(style.stroke_width);
    for (const auto& o : style.overlays) {
        if (o.size() >= 2) {
            append_path(out, o,
                        "fill=\"none\" stroke=\"" + style.overlay_color + "\" stroke-width=\"" + sw +
                            "\" stroke-dasharray=\"4 2\" class=\"target\"");
        }
    }
    for (const auto& c : frame.chains) {
        append_path(out, c.points,
                    "fill=\"none\" stroke=\"" + style.chain_color + "\" stroke-width=\"" + sw +
                        "\" stroke-linejoin=\"round\" class=\"chain\"");
    }
    if (frame.driven && frame.driven->chain < frame.chains.size() &&
        frame.driven->point < frame.chains[frame.driven->chain].points.size()) {
        const auto& p = frame.chains[frame.driven->chain].points[frame.driven->point];
        out << "    <circle cx=\"" << format_exact(p.x) << "\" cy=\"" << format_exact(p.y) << "\" r=\""
            << format_exact(style.driven_radius) << "\" fill=\"" << style.driven_color << "\" class=\"driven\"/>\n";
    }
    out << "  </g>\n</svg>\n";
    return out.str();
}

}  // namespace chainform
