#include "chainform/chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chainform/error.hpp"

namespace chainform {

void validate(const SolverParams& s) {
    if (!(s.dt > 0.0) || !std::isfinite(s.dt)) {
        throw ParameterError("solver: dt must be finite and > 0");
    }
    if (s.substeps < 1) {
        throw ParameterError("solver: substeps must be >= 1");
    }
    if (!(s.rest_length_um > 0.0) || !std::isfinite(s.rest_length_um)) {
        throw ParameterError("solver: rest_length must be finite and > 0");
    }
    if (!(s.threshold > 0.0 && s.threshold < 1.0)) {
        throw ParameterError("solver: threshold must lie in (0, 1)");
    }
    if (s.max_sweeps < 1) {
        throw ParameterError("solver: max_sweeps must be >= 1");
    }
    if (!(s.clamp_fraction > 0.0 && s.clamp_fraction <= 1.0)) {
        throw ParameterError("solver: clamp_fraction must lie in (0, 1]");
    }
}

void validate(const ChainState& chain) {
    if (chain.points.size() < 2) {
        throw ParameterError("chain: at least two points are required");
    }
    if (chain.points.size() != chain.prev_points.size()) {
        throw ParameterError("chain: points and prev_points differ in length");
    }
    if (!(chain.rest_length > 0.0)) {
        throw ParameterError("chain: rest length must be > 0");
    }
    for (const auto& p : chain.points) {
        if (!is_finite(p)) {
            throw ParameterError("chain: non-finite coordinate");
        }
    }
}

ChainState discretize_polyline(std::span<const Point2> vertices, double rest_length) {
    if (!(rest_length > 0.0) || !std::isfinite(rest_length)) {
        throw DiscretizationError("discretize: rest length must be finite and > 0");
    }
    if (vertices.size() < 2) {
        throw DiscretizationError("discretize: a polyline needs at least two vertices");
    }
    for (const auto& v : vertices) {
        if (!is_finite(v)) {
            throw DiscretizationError("discretize: non-finite vertex");
        }
    }
    if (arc_length(vertices) < rest_length * (1.0 - 1e-9)) {
        throw DiscretizationError("discretize: polyline is shorter than one rest length");
    }

    ChainState chain;
    chain.rest_length = rest_length;
    chain.points.push_back(vertices.front());
    for (std::size_t leg = 1; leg < vertices.size(); ++leg) {
        const Point2 a = vertices[leg - 1];
        const Point2 b = vertices[leg];
        const double len = distance(a, b);
        const double ratio = len / rest_length;
        const double whole = std::round(ratio);
        if (whole < 1.0 || std::abs(len - whole * rest_length) > 1e-9 * rest_length) {
            throw DiscretizationError("discretize: leg " + std::to_string(leg) + " has length " + std::to_string(len) +
                                      ", not a whole multiple of the rest length " + std::to_string(rest_length));
        }
        const auto n = static_cast<long>(whole);
        const Point2 d = b - a;
        for (long k = 1; k < n; ++k) {
            chain.points.push_back({a.x + d.x * static_cast<double>(k) / whole, a.y + d.y * static_cast<double>(k) / whole});
        }
        chain.points.push_back(b);
    }
    chain.prev_points = chain.points;
    return chain;
}

double segment_length(const ChainState& chain, std::size_t segment) {
    return distance(chain.points.at(segment), chain.points.at(segment + 1));
}

double elongation(const ChainState& chain, std::size_t segment) {
    return segment_length(chain, segment) - chain.rest_length;
}

Stretch segment_stretch(const ChainState& chain, std::size_t segment) {
    if (segment >= chain.segment_count()) {
        throw std::out_of_range("segment_stretch: segment index out of range");
    }
    const Point2 back = chain.points[segment] - chain.points[segment + 1];
    const double len = norm(back);
    if (len == 0.0) {
        throw DegenerateGeometryError("segment_stretch: coincident points at segment " + std::to_string(segment));
    }
    return Stretch{segment, len - chain.rest_length, back * (1.0 / len)};
}

double max_elongation(const ChainState& chain) {
    double worst = -chain.rest_length;
    for (std::size_t s = 0; s < chain.segment_count(); ++s) {
        worst = std::max(worst, elongation(chain, s));
    }
    return worst;
}

}  // namespace chainform
