#include "chainform/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace chainform {

double arc_length(std::span<const Point2> polyline) {
    double total = 0.0;
    for (std::size_t i = 1; i < polyline.size(); ++i) {
        total += distance(polyline[i - 1], polyline[i]);
    }
    return total;
}

double distance_to_segment(const Point2& p, const Point2& a, const Point2& b) {
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) {
        return distance(p, a);
    }
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + ab * t);
}

double distance_to_polyline(const Point2& p, std::span<const Point2> polyline) {
    if (polyline.empty()) {
        throw std::invalid_argument("distance_to_polyline: empty polyline");
    }
    if (polyline.size() == 1) {
        return distance(p, polyline.front());
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < polyline.size(); ++i) {
        best = std::min(best, distance_to_segment(p, polyline[i - 1], polyline[i]));
    }
    return best;
}

Polyline resample(std::span<const Point2> polyline, double spacing) {
    if (polyline.empty() || !(spacing > 0.0)) {
        throw std::invalid_argument("resample: need a non-empty polyline and positive spacing");
    }
    Polyline out{polyline.front()};
    double carried = 0.0;  // arc length since the last emitted sample
    for (std::size_t i = 1; i < polyline.size(); ++i) {
        const Point2 a = polyline[i - 1];
        const Point2 b = polyline[i];
        const double len = distance(a, b);
        double s = spacing - carried;
        while (s < len) {
            out.push_back(a + (b - a) * (s / len));
            s += spacing;
        }
        carried = len - (s - spacing);
    }
    if (!(out.back() == polyline.back())) {
        out.push_back(polyline.back());
    }
    return out;
}

}  // namespace chainform
