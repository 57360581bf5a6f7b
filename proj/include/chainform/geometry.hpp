#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace chainform {

/// Planar position or displacement in micrometres.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;

    Point2& operator+=(const Point2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    Point2& operator-=(const Point2& o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }
};

inline Point2 operator+(Point2 a, const Point2& b) { return a += b; }
inline Point2 operator-(Point2 a, const Point2& b) { return a -= b; }
inline Point2 operator*(const Point2& a, double s) { return {a.x * s, a.y * s}; }
inline Point2 operator*(double s, const Point2& a) { return a * s; }

inline double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Point2& a) { return std::hypot(a.x, a.y); }
inline double distance(const Point2& a, const Point2& b) { return norm(b - a); }

inline bool is_finite(const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

using Polyline = std::vector<Point2>;

double arc_length(std::span<const Point2> polyline);

/// Distance from `p` to the closed segment [a, b].
double distance_to_segment(const Point2& p, const Point2& a, const Point2& b);

/// Distance from `p` to the nearest point of `polyline` (a single vertex counts).
double distance_to_polyline(const Point2& p, std::span<const Point2> polyline);

/// Points along `polyline` spaced `spacing` apart in arc length, starting at the
/// first vertex and always ending at the last one.
Polyline resample(std::span<const Point2> polyline, double spacing);

}  // namespace chainform
