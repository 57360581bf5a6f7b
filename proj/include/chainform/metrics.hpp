#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "chainform/chain.hpp"
#include "chainform/frame.hpp"
#include "chainform/geometry.hpp"

namespace chainform {

struct SegmentationReport {
    std::vector<std::size_t> active_point_ids;
    std::vector<std::size_t> passive_point_ids;
    std::optional<std::size_t> threshold_point_id;  ///< active point farthest from the driven point
};

/// Active points are those with an adjacent spring stretched beyond θ·l in
/// any of `frames` (snapshots of one chain, in order). Everything else is
/// passive.
SegmentationReport segment_active_passive(std::span<const ChainSnapshot> frames, std::size_t driven_point,
                                          double theta, double rest_length);

/// Two-state form: only `before` and `after` are inspected.
SegmentationReport segment_active_passive(const ChainState& before, const ChainState& after, std::size_t driven_point,
                                          double theta, double rest_length);

struct WaveReport {
    Point2 center;               ///< point of largest deviation within the support
    std::size_t center_id = 0;
    double extent = 0.0;         ///< support width projected on the baseline axis, µm
    double amplitude = 0.0;      ///< |signed_peak|
    double signed_peak = 0.0;    ///< deviation at `center`, positive to the left of the axis
    bool supported = false;      ///< false when the stress point itself is within θ·l
    std::size_t support_first = 0;
    std::size_t support_last = 0;
    double axial_begin = 0.0;    ///< axis coordinate of the support ends
    double axial_end = 0.0;
};

/// Lateral deviation of `final_points` from the straight `baseline` (its first
/// to last point) around `stress_point`. The support is the contiguous run of
/// points around the stress point deviating by more than θ·l.
WaveReport wave_report(std::span<const Point2> baseline, std::span<const Point2> final_points, std::size_t stress_point,
                       double theta, double rest_length);

/// Signed perpendicular deviation of every point from the baseline axis.
std::vector<double> lateral_deviation(std::span<const Point2> baseline, std::span<const Point2> points);

/// Axial gap between two supports (0 when they touch or overlap).
double support_gap(const WaveReport& a, const WaveReport& b);

/// True when the two supports share at least one point.
bool supports_overlap(const WaveReport& a, const WaveReport& b);

struct DecaySample {
    double chain_distance = 0.0;  ///< rest arc length from the stress point, µm
    double displacement = 0.0;
    std::size_t point_id = 0;
};

struct LogLinearFit {
    double slope = 0.0;  ///< d ln(displacement) / d distance, 1/µm
    double intercept = 0.0;
    double r_squared = 0.0;
};

struct DecayProfile {
    std::vector<DecaySample> samples;  ///< ordered by chain distance
    std::optional<LogLinearFit> fit;
};

/// Displacement between `before` and `after` against chain distance from
/// `stress_point`. The fit of ln(displacement) uses `active` points with a
/// non-zero displacement and is omitted when fewer than three qualify.
DecayProfile decay_profile(std::span<const Point2> before, std::span<const Point2> after, std::size_t stress_point,
                           double rest_length, std::span<const std::size_t> active);

struct ShapeError {
    double rms = 0.0;
    double hausdorff = 0.0;
};

/// rms of chain-point distances to `target`; Hausdorff over both directions
/// with the target sampled every rest_length / 4.
ShapeError shape_error(std::span<const Point2> chain, std::span<const Point2> target, double rest_length);

struct LengthAudit {
    double total_length = 0.0;
    double max_elongation = 0.0;
    double min_separation = 0.0;  ///< closest pair of distinct points
};

LengthAudit length_audit(std::span<const Point2> points, double rest_length);

/// Largest |deviation| from the baseline axis along the rest-arc interval
/// [arc_from, arc_to] measured from point 0. Chains are piecewise linear, so
/// vertices inside the interval and the two interpolated ends suffice.
double max_lateral_deviation(std::span<const Point2> baseline, std::span<const Point2> points, double rest_length,
                             double arc_from, double arc_to);

/// Max lateral deviation of the body lying at least `exclusion` of rest arc
/// away from `driven_point`.
double undriven_lateral_deviation(std::span<const Point2> baseline, std::span<const Point2> points,
                                  double rest_length, std::size_t driven_point, double exclusion);

}  // namespace chainform
