#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chainform/geometry.hpp"

namespace chainform {

struct SolverParams {
    double dt = 0.1;
    int substeps = 10;
    double rest_length_um = 5.0;
    double threshold = 0.05;  ///< fraction of the rest length
    std::int64_t max_sweeps = 200000;
    double clamp_fraction = 0.5;

    /// Elongation (µm) above which a spring pulls.
    double gate() const { return threshold * rest_length_um; }

    friend bool operator==(const SolverParams&, const SolverParams&) = default;
};

/// Throws ParameterError when an invariant of `s` does not hold.
void validate(const SolverParams& s);

/// Discretized robot: I+1 mass points joined by I equivalent springs.
struct ChainState {
    std::vector<Point2> points;
    std::vector<Point2> prev_points;  ///< positions one frame earlier
    double rest_length = 0.0;
    std::int64_t frame_index = 0;
    std::size_t anchor = 0;  ///< most recently actuated point; origin of free sweeps

    std::size_t point_count() const { return points.size(); }
    std::size_t segment_count() const { return points.empty() ? 0 : points.size() - 1; }
};

/// Throws ParameterError on a malformed chain (size mismatch, < 2 points,
/// non-finite coordinates).
void validate(const ChainState& chain);

/// One spring's state. `unit_direction` points from the far end (i+1) back
/// toward point i, the direction the spring pulls point i+1.
struct Stretch {
    std::size_t segment_index = 0;
    double elongation = 0.0;
    Point2 unit_direction;
};

/// Splits `vertices` into points spaced `rest_length` apart in arc length.
/// Every vertex leg must itself be a whole number of rest lengths so that all
/// springs start at rest; otherwise DiscretizationError.
ChainState discretize_polyline(std::span<const Point2> vertices, double rest_length);

Stretch segment_stretch(const ChainState& chain, std::size_t segment);

double segment_length(const ChainState& chain, std::size_t segment);
double elongation(const ChainState& chain, std::size_t segment);
double max_elongation(const ChainState& chain);

}  // namespace chainform
