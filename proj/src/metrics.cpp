#include "chainform/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "chainform/error.hpp"

namespace chainform {

namespace {

struct Axis {
    Point2 origin;
    Point2 unit;
};

Axis baseline_axis(std::span<const Point2> baseline) {
    if (baseline.size() < 2) {
        throw DegenerateGeometryError("baseline needs at least two points");
    }
    const Point2 d = baseline.back() - baseline.front();
    const double len = norm(d);
    if (!(len > 0.0)) {
        throw DegenerateGeometryError("baseline end points coincide");
    }
    return {baseline.front(), d * (1.0 / len)};
}

std::size_t chain_gap(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

Point2 point_at_arc(std::span<const Point2> points, double rest_length, double s) {
    const double u = s / rest_length;
    const auto last = points.size() - 1;
    const double fl = std::floor(u);
    if (fl >= static_cast<double>(last)) {
        return points[last];
    }
    const auto i = static_cast<std::size_t>(std::max(0.0, fl));
    const double t = u - static_cast<double>(i);
    if (t == 0.0) {
        return points[i];
    }
    return points[i] * (1.0 - t) + points[i + 1] * t;
}

}  // namespace

SegmentationReport segment_active_passive(std::span<const ChainSnapshot> frames, std::size_t driven_point,
                                          double theta, double rest_length) {
    SegmentationReport r;
    if (frames.empty()) {
        return r;
    }
    const std::size_t n = frames.front().points.size();
    const double gate = theta * rest_length;
    std::vector<bool> active(n, false);
    for (const auto& f : frames) {
        if (f.points.size() != n || f.elongation.size() + 1 != n) {
            throw ParameterError("segmentation: frames describe chains of different sizes");
        }
        for (std::size_t s = 0; s < f.elongation.size(); ++s) {
            if (f.elongation[s] > gate) {
                active[s] = true;
                active[s + 1] = true;
            }
        }
    }
    std::size_t farthest = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!active[i]) {
            r.passive_point_ids.push_back(i);
            continue;
        }
        r.active_point_ids.push_back(i);
        const std::size_t gap = chain_gap(i, driven_point);
        if (!r.threshold_point_id || gap > farthest) {
            r.threshold_point_id = i;
            farthest = gap;
        }
    }
    return r;
}

SegmentationReport segment_active_passive(const ChainState& before, const ChainState& after, std::size_t driven_point,
                                          double theta, double rest_length) {
    if (before.point_count() != after.point_count()) {
        throw ParameterError("segmentation: chains differ in point count");
    }
    const ChainSnapshot frames[] = {snapshot(before), snapshot(after)};
    return segment_active_passive(frames, driven_point, theta, rest_length);
}

std::vector<double> lateral_deviation(std::span<const Point2> baseline, std::span<const Point2> points) {
    const Axis axis = baseline_axis(baseline);
    std::vector<double> dev;
    dev.reserve(points.size());
    for (const auto& p : points) {
        dev.push_back(cross(axis.unit, p - axis.origin));
    }
    return dev;
}

WaveReport wave_report(std::span<const Point2> baseline, std::span<const Point2> final_points, std::size_t stress_point,
                       double theta, double rest_length) {
    if (baseline.size() != final_points.size()) {
        throw ParameterError("wave report: chains differ in point count");
    }
    if (stress_point >= final_points.size()) {
        throw ParameterError("wave report: stress point out of range");
    }
    const Axis axis = baseline_axis(baseline);
    const auto dev = lateral_deviation(baseline, final_points);
    const double gate = theta * rest_length;

    WaveReport w;
    w.center_id = stress_point;
    w.center = final_points[stress_point];
    w.signed_peak = dev[stress_point];
    w.amplitude = std::abs(w.signed_peak);
    w.support_first = w.support_last = stress_point;
    const double t0 = dot(axis.unit, final_points[stress_point] - axis.origin);
    w.axial_begin = w.axial_end = t0;
    if (!(std::abs(dev[stress_point]) > gate)) {
        return w;
    }
    w.supported = true;
    std::size_t lo = stress_point;
    while (lo > 0 && std::abs(dev[lo - 1]) > gate) --lo;
    std::size_t hi = stress_point;
    while (hi + 1 < dev.size() && std::abs(dev[hi + 1]) > gate) ++hi;
    w.support_first = lo;
    w.support_last = hi;
    for (std::size_t i = lo; i <= hi; ++i) {
        if (std::abs(dev[i]) > w.amplitude) {
            w.amplitude = std::abs(dev[i]);
            w.signed_peak = dev[i];
            w.center_id = i;
            w.center = final_points[i];
        }
        const double t = dot(axis.unit, final_points[i] - axis.origin);
        w.axial_begin = std::min(w.axial_begin, t);
        w.axial_end = std::max(w.axial_end, t);
    }
    w.extent = w.axial_end - w.axial_begin;
    return w;
}

double support_gap(const WaveReport& a, const WaveReport& b) {
    return std::max(0.0, std::max(a.axial_begin, b.axial_begin) - std::min(a.axial_end, b.axial_end));
}

bool supports_overlap(const WaveReport& a, const WaveReport& b) {
    return a.supported && b.supported && a.support_first <= b.support_last && b.support_first <= a.support_last;
}

DecayProfile decay_profile(std::span<const Point2> before, std::span<const Point2> after, std::size_t stress_point,
                           double rest_length, std::span<const std::size_t> active) {
    if (before.size() != after.size()) {
        throw ParameterError("decay profile: chains differ in point count");
    }
    DecayProfile d;
    d.samples.reserve(after.size());
    for (std::size_t i = 0; i < after.size(); ++i) {
        d.samples.push_back({static_cast<double>(chain_gap(i, stress_point)) * rest_length,
                             distance(before[i], after[i]), i});
    }
    std::stable_sort(d.samples.begin(), d.samples.end(),
                     [](const DecaySample& a, const DecaySample& b) { return a.chain_distance < b.chain_distance; });

    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& s : d.samples) {
        if (s.displacement > 0.0 && std::find(active.begin(), active.end(), s.point_id) != active.end()) {
            xs.push_back(s.chain_distance);
            ys.push_back(std::log(s.displacement));
        }
    }
    if (xs.size() < 3) {
        return d;
    }
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) {
        return d;
    }
    LogLinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    d.fit = fit;
    return d;
}

ShapeError shape_error(std::span<const Point2> chain, std::span<const Point2> target, double rest_length) {
    if (target.empty()) {
        throw ParameterError("shape error: empty target");
    }
    if (chain.empty()) {
        throw ParameterError("shape error: empty chain");
    }
    ShapeError e;
    double sum_sq = 0.0;
    for (const auto& p : chain) {
        const double d = distance_to_polyline(p, target);
        sum_sq += d * d;
        e.hausdorff = std::max(e.hausdorff, d);
    }
    e.rms = std::sqrt(sum_sq / static_cast<double>(chain.size()));
    for (const auto& q : resample(target, rest_length / 4.0)) {
        e.hausdorff = std::max(e.hausdorff, distance_to_polyline(q, chain));
    }
    return e;
}

LengthAudit length_audit(std::span<const Point2> points, double rest_length) {
    LengthAudit a;
    if (points.size() < 2) {
        return a;
    }
    a.max_elongation = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const double len = distance(points[i], points[i + 1]);
        a.total_length += len;
        a.max_elongation = std::max(a.max_elongation, len - rest_length);
    }

    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return points[l].x < points[r].x; });
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a_i = 0; a_i < order.size(); ++a_i) {
        const Point2& p = points[order[a_i]];
        for (std::size_t b_i = a_i + 1; b_i < order.size(); ++b_i) {
            const Point2& q = points[order[b_i]];
            if (q.x - p.x >= best) {
                break;
            }
            best = std::min(best, distance(p, q));
        }
    }
    a.min_separation = best;
    return a;
}

double max_lateral_deviation(std::span<const Point2> baseline, std::span<const Point2> points, double rest_length,
                             double arc_from, double arc_to) {
    if (baseline.size() != points.size()) {
        throw ParameterError("lateral deviation: chains differ in point count");
    }
    const Axis axis = baseline_axis(baseline);
    const double total = rest_length * static_cast<double>(points.size() - 1);
    arc_from = std::max(arc_from, 0.0);
    arc_to = std::min(arc_to, total);
    if (arc_from > arc_to) {
        return 0.0;
    }
    const auto dev_at = [&](const Point2& p) { return std::abs(cross(axis.unit, p - axis.origin)); };
    double best = std::max(dev_at(point_at_arc(points, rest_length, arc_from)),
                           dev_at(point_at_arc(points, rest_length, arc_to)));
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double s = rest_length * static_cast<double>(i);
        if (s > arc_from && s < arc_to) {
            best = std::max(best, dev_at(points[i]));
        }
    }
    return best;
}

double undriven_lateral_deviation(std::span<const Point2> baseline, std::span<const Point2> points,
                                  double rest_length, std::size_t driven_point, double exclusion) {
    const double total = rest_length * static_cast<double>(points.size() - 1);
    const double s_d = rest_length * static_cast<double>(driven_point);
    double best = 0.0;
    if (s_d - exclusion >= 0.0) {
        best = std::max(best, max_lateral_deviation(baseline, points, rest_length, 0.0, s_d - exclusion));
    }
    if (s_d + exclusion <= total) {
        best = std::max(best, max_lateral_deviation(baseline, points, rest_length, s_d + exclusion, total));
    }
    return best;
}

}  // namespace chainform
