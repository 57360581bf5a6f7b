#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "chainform/chain.hpp"
#include "chainform/material.hpp"

namespace chainform {

/// Prescribed positions for driven points in one frame, keyed by point index.
using DrivenTargets = std::map<std::size_t, Point2>;

/// Displacement of `self` toward `neighbor` produced by one substep of spring
/// pull: magnitude min(c·ΔL·Δt²/2, clamp·ΔL), zero when the spring is not
/// elongated. The caller applies the threshold gate.
Point2 substep_pull(const Point2& self, const Point2& neighbor, double rest_length, ComplianceRate rate, double dt,
                    double clamp_fraction);

/// One entry of a relaxation pass. `inner` is the neighbor on the side of the
/// nearest driven point (already updated when this point is visited); `outer`
/// is the other neighbor, if any.
struct Visit {
    std::size_t index = 0;
    std::size_t inner = 0;
    std::optional<std::size_t> outer;
};

/// Points in order of increasing chain distance from the nearest driven point
/// (ties toward the lower index). Driven points are skipped. With no driven
/// points the distance is measured from `anchor`, which is then visited first.
std::vector<Visit> visit_order(std::size_t point_count, std::span<const std::size_t> driven, std::size_t anchor);

/// One Gauss–Seidel pass. Each visited point is first pulled toward its inner
/// neighbor, then toward its outer neighbor; a pull acts only while its spring
/// is elongated beyond θ·l, and the outer pull additionally requires the outer
/// spring to have been beyond θ·l before the point's own update. Driven points
/// never move.
void sweep_substep(ChainState& chain, std::span<const std::size_t> driven, const SolverParams& params,
                   ComplianceRate rate);

/// Places driven points on their targets and runs `params.substeps` passes.
/// Rolls prev_points, increments frame_index and moves the anchor to the
/// (lowest-index) driven point.
void advance_frame(ChainState& chain, const DrivenTargets& targets, const SolverParams& params, ComplianceRate rate);

bool is_quiescent(const ChainState& chain, const SolverParams& params);

/// Repeats passes until every spring is within θ·l of rest. Returns the number
/// of passes used (0 for an already quiescent chain). Throws
/// NonConvergenceError once params.max_sweeps passes have not sufficed.
std::int64_t run_until_quiescent(ChainState& chain, std::span<const std::size_t> driven, const SolverParams& params,
                                 ComplianceRate rate);

}  // namespace chainform
