#include "chainform/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "chainform/error.hpp"

namespace chainform {

namespace {

std::vector<std::size_t> chain_distance(std::size_t count, std::span<const std::size_t> sources) {
    std::vector<std::size_t> dist(count, count);
    for (std::size_t i = 0; i < count; ++i) {
        for (const auto s : sources) {
            const std::size_t d = i > s ? i - s : s - i;
            dist[i] = std::min(dist[i], d);
        }
    }
    return dist;
}

bool contains(std::span<const std::size_t> set, std::size_t value) {
    return std::find(set.begin(), set.end(), value) != set.end();
}

}  // namespace

Point2 substep_pull(const Point2& self, const Point2& neighbor, double rest_length, ComplianceRate rate, double dt,
                    double clamp_fraction) {
    const Point2 toward = neighbor - self;
    const double len = norm(toward);
    const double stretch = len - rest_length;
    if (!(stretch > 0.0)) {
        return {};
    }
    const double fraction = std::min(rate.c * dt * dt / 2.0, clamp_fraction);
    return toward * (fraction * stretch / len);
}

std::vector<Visit> visit_order(std::size_t point_count, std::span<const std::size_t> driven, std::size_t anchor) {
    std::vector<Visit> order;
    if (point_count < 2) {
        return order;
    }
    const std::size_t origin[] = {std::min(anchor, point_count - 1)};
    const auto dist = driven.empty() ? chain_distance(point_count, origin) : chain_distance(point_count, driven);

    std::vector<std::size_t> indices(point_count);
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    std::stable_sort(indices.begin(), indices.end(),
                     [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });

    for (const auto i : indices) {
        if (contains(driven, i)) {
            continue;
        }
        const bool has_left = i > 0;
        const bool has_right = i + 1 < point_count;
        const bool left_inner = has_left && dist[i - 1] < dist[i];
        const bool right_inner = has_right && dist[i + 1] < dist[i];

        Visit v;
        v.index = i;
        if (left_inner || !right_inner) {
            // Left side is inner when it is closer, when both sides are (between
            // two drivers), or for the free anchor itself.
            v.inner = has_left ? i - 1 : i + 1;
            if (has_left && has_right) {
                v.outer = i + 1;
            }
        } else {
            v.inner = i + 1;
            if (has_left) {
                v.outer = i - 1;
            }
        }
        order.push_back(v);
    }
    return order;
}

void sweep_substep(ChainState& chain, std::span<const std::size_t> driven, const SolverParams& params,
                   ComplianceRate rate) {
    const double rest = chain.rest_length;
    const double gate = params.threshold * rest;
    auto& pts = chain.points;

    for (const auto& v : visit_order(pts.size(), driven, chain.anchor)) {
        Point2 p = pts[v.index];
        const bool outer_engaged = v.outer && distance(p, pts[*v.outer]) - rest > gate;

        if (distance(p, pts[v.inner]) - rest > gate) {
            p += substep_pull(p, pts[v.inner], rest, rate, params.dt, params.clamp_fraction);
        }
        if (outer_engaged && distance(p, pts[*v.outer]) - rest > gate) {
            p += substep_pull(p, pts[*v.outer], rest, rate, params.dt, params.clamp_fraction);
        }
        pts[v.index] = p;
    }
}

void advance_frame(ChainState& chain, const DrivenTargets& targets, const SolverParams& params, ComplianceRate rate) {
    chain.prev_points = chain.points;
    std::vector<std::size_t> driven;
    driven.reserve(targets.size());
    for (const auto& [index, target] : targets) {
        chain.points.at(index) = target;
        driven.push_back(index);
    }
    if (!driven.empty()) {
        chain.anchor = driven.front();
    }
    for (int n = 0; n < params.substeps; ++n) {
        sweep_substep(chain, driven, params, rate);
    }
    ++chain.frame_index;
}

bool is_quiescent(const ChainState& chain, const SolverParams& params) {
    const double gate = params.threshold * chain.rest_length;
    for (std::size_t s = 0; s < chain.segment_count(); ++s) {
        if (elongation(chain, s) > gate) {
            return false;
        }
    }
    return true;
}

std::int64_t run_until_quiescent(ChainState& chain, std::span<const std::size_t> driven, const SolverParams& params,
                                 ComplianceRate rate) {
    std::int64_t sweeps = 0;
    while (!is_quiescent(chain, params)) {
        if (sweeps >= params.max_sweeps) {
            const double residual = max_elongation(chain);
            std::ostringstream msg;
            msg << "relaxation did not reach quiescence within " << params.max_sweeps
                << " sweeps; max elongation " << residual << " um exceeds " << params.threshold * chain.rest_length
                << " um";
            throw NonConvergenceError(msg.str(), residual);
        }
        sweep_substep(chain, driven, params, rate);
        ++sweeps;
    }
    return sweeps;
}

}  // namespace chainform
