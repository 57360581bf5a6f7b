#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "chainform/chain.hpp"

namespace chainform {

/// A point of one chain in a multi-chain scene.
struct PointRef {
    std::size_t chain = 0;
    std::size_t point = 0;

    friend bool operator==(const PointRef&, const PointRef&) = default;
};

/// Drag of one stress point through `waypoints`, starting wherever the point
/// sits when the move begins.
struct WaypointMove {
    PointRef point;
    std::vector<Point2> waypoints;
    double step_size = 1.0;  ///< µm per frame
};

struct ActuationSchedule {
    std::vector<WaypointMove> moves;
    bool settle_between = true;
};

/// One frame with a single driven point held at `target`.
struct DriveStep {
    PointRef point;
    Point2 target;

    friend bool operator==(const DriveStep&, const DriveStep&) = default;
};

/// Run to quiescence before the next move.
struct SettleStep {
    friend bool operator==(const SettleStep&, const SettleStep&) = default;
};

using ScheduleStep = std::variant<DriveStep, SettleStep>;

/// Throws ScheduleError when `m` has no waypoints, a non-positive or
/// non-finite step, or a non-finite waypoint.
void validate(const WaypointMove& m);

/// Per-frame targets for a drag from `start` through `waypoints`. Each leg is
/// split into ⌈leg / step⌉ equal frames and ends on its waypoint exactly, so
/// every waypoint is visited and no frame moves further than `step`.
/// Zero-length legs contribute nothing.
std::vector<Point2> expand_path(const Point2& start, std::span<const Point2> waypoints, double step_size);

/// Expands every move against `chains`. A move starts from the chain point's
/// position, or from the last target of an earlier move of the same point.
/// Throws ScheduleError for an unknown chain or point.
std::vector<ScheduleStep> compile_schedule(const ActuationSchedule& schedule, std::span<const ChainState> chains);

/// Single-chain form; every move must name chain 0.
std::vector<ScheduleStep> compile_schedule(const ActuationSchedule& schedule, const ChainState& chain);

/// Index of the point closest to `pos`; ties go to the lower index.
std::size_t nearest_point_id(const ChainState& chain, const Point2& pos);

}  // namespace chainform
