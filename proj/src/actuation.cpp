#include "chainform/actuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "chainform/error.hpp"

namespace chainform {

void validate(const WaypointMove& m) {
    if (m.waypoints.empty()) {
        throw ScheduleError("move has no waypoints");
    }
    if (!std::isfinite(m.step_size) || !(m.step_size > 0.0)) {
        throw ScheduleError("move step size must be a positive number of micrometres");
    }
    for (const auto& w : m.waypoints) {
        if (!is_finite(w)) {
            throw ScheduleError("move waypoint has a non-finite coordinate");
        }
    }
}

std::vector<Point2> expand_path(const Point2& start, std::span<const Point2> waypoints, double step_size) {
    std::vector<Point2> targets;
    Point2 from = start;
    for (const auto& to : waypoints) {
        const Point2 d = to - from;
        const double leg = norm(d);
        if (leg > 0.0) {
            const auto frames = static_cast<std::size_t>(std::max(1.0, std::ceil(leg / step_size - 1e-9)));
            for (std::size_t k = 1; k < frames; ++k) {
                const double kk = static_cast<double>(k);
                const double nn = static_cast<double>(frames);
                targets.push_back({from.x + d.x * kk / nn, from.y + d.y * kk / nn});
            }
            targets.push_back(to);
        }
        from = to;
    }
    return targets;
}

std::vector<ScheduleStep> compile_schedule(const ActuationSchedule& schedule, std::span<const ChainState> chains) {
    std::vector<ScheduleStep> steps;
    std::map<std::pair<std::size_t, std::size_t>, Point2> last_target;
    for (std::size_t m = 0; m < schedule.moves.size(); ++m) {
        const auto& move = schedule.moves[m];
        validate(move);
        const auto [c, p] = move.point;
        if (c >= chains.size()) {
            throw ScheduleError("move " + std::to_string(m) + " names chain " + std::to_string(c) + " but there are " +
                                std::to_string(chains.size()));
        }
        if (p >= chains[c].point_count()) {
            throw ScheduleError("move " + std::to_string(m) + " names point " + std::to_string(p) + " but chain " +
                                std::to_string(c) + " has " + std::to_string(chains[c].point_count()) + " points");
        }
        const auto key = std::make_pair(c, p);
        const auto it = last_target.find(key);
        const Point2 start = it != last_target.end() ? it->second : chains[c].points[p];
        for (const auto& t : expand_path(start, move.waypoints, move.step_size)) {
            steps.emplace_back(DriveStep{move.point, t});
        }
        last_target[key] = move.waypoints.back();
        if (schedule.settle_between) {
            steps.emplace_back(SettleStep{});
        }
    }
    return steps;
}

std::vector<ScheduleStep> compile_schedule(const ActuationSchedule& schedule, const ChainState& chain) {
    return compile_schedule(schedule, std::span<const ChainState>(&chain, 1));
}

std::size_t nearest_point_id(const ChainState& chain, const Point2& pos) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < chain.points.size(); ++i) {
        const double d = distance(chain.points[i], pos);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

}  // namespace chainform
