#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "chainform/error.hpp"
#include "chainform/frame.hpp"
#include "chainform/metrics.hpp"
#include "support.hpp"

using namespace chainform;
using doctest::Approx;

namespace {

ChainSnapshot snap(std::vector<Point2> pts) { return snapshot(testing::make_chain(std::move(pts))); }

Polyline straight(std::size_t n, double y = 0.0) {
    Polyline p;
    for (std::size_t i = 0; i < n; ++i) p.push_back({5.0 * static_cast<double>(i), y});
    return p;
}

}  // namespace

TEST_CASE("segmentation marks both ends of a stretched spring") {
    auto moved = straight(6);
    moved[5] = {25.0, 1.0};  // spring 4 stretched by hypot(5,1) - 5 ~ 0.099
    const ChainSnapshot frames[] = {snap(straight(6)), snap(moved)};

    const auto r = segment_active_passive(frames, 5, 0.01, 5.0);
    CHECK(r.active_point_ids == std::vector<std::size_t>{4, 5});
    CHECK(r.passive_point_ids == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(r.threshold_point_id == std::optional<std::size_t>{4});

    const auto strict = segment_active_passive(frames, 5, 0.05, 5.0);
    CHECK(strict.active_point_ids.empty());
    CHECK(strict.passive_point_ids.size() == 6);
    CHECK_FALSE(strict.threshold_point_id.has_value());
}

TEST_CASE("segmentation remembers stretch seen mid episode") {
    auto mid = straight(4);
    mid[0] = {-1.0, 0.0};
    const ChainSnapshot frames[] = {snap(straight(4)), snap(mid), snap(straight(4))};
    const auto r = segment_active_passive(frames, 0, 0.05, 5.0);
    CHECK(r.active_point_ids == std::vector<std::size_t>{0, 1});

    const auto two_state = segment_active_passive(testing::make_chain(straight(4)), testing::make_chain(straight(4)),
                                                  0, 0.05, 5.0);
    CHECK(two_state.active_point_ids.empty());
}

TEST_CASE("segmentation rejects mismatched frames") {
    const ChainSnapshot frames[] = {snap(straight(4)), snap(straight(5))};
    CHECK_THROWS_AS(segment_active_passive(frames, 0, 0.05, 5.0), ParameterError);
}

TEST_CASE("lateral deviation is signed to the left of the axis") {
    const Polyline base = {{0, 0}, {5, 0}, {10, 0}};
    const Polyline pts = {{0, 0}, {5, 2}, {10, -3}};
    const auto dev = lateral_deviation(base, pts);
    CHECK(dev == std::vector<double>{0.0, 2.0, -3.0});
    const Polyline degenerate = {{1, 1}, {1, 1}};
    CHECK_THROWS_AS(lateral_deviation(degenerate, pts), DegenerateGeometryError);
}

TEST_CASE("wave report around a triangular bump") {
    const auto base = straight(11);
    auto pts = base;
    const double bump[] = {0, 0, 0.1, 1, 2, 3, 2, 1, 0.1, 0, 0};
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i].y = bump[i];

    const auto w = wave_report(base, pts, 4, 0.05, 5.0);
    CHECK(w.supported);
    CHECK(w.support_first == 3);
    CHECK(w.support_last == 7);
    CHECK(w.center_id == 5);
    CHECK(w.signed_peak == 3.0);
    CHECK(w.amplitude == 3.0);
    CHECK(w.axial_begin == 15.0);
    CHECK(w.axial_end == 35.0);
    CHECK(w.extent == 20.0);

    const auto flat = wave_report(base, pts, 0, 0.05, 5.0);
    CHECK_FALSE(flat.supported);
    CHECK(flat.extent == 0.0);

    for (auto& p : pts) p.y = -p.y;
    const auto down = wave_report(base, pts, 4, 0.05, 5.0);
    CHECK(down.signed_peak == -3.0);
    CHECK(down.extent == 20.0);
}

TEST_CASE("support gap and overlap") {
    const auto base = straight(21);
    auto pts = base;
    pts[4].y = 1;
    pts[5].y = 1;
    pts[14].y = -1;
    pts[15].y = -1;
    const auto a = wave_report(base, pts, 4, 0.05, 5.0);
    const auto b = wave_report(base, pts, 15, 0.05, 5.0);
    CHECK(support_gap(a, b) == 45.0);
    CHECK(support_gap(b, a) == 45.0);
    CHECK_FALSE(supports_overlap(a, b));
    CHECK(supports_overlap(a, a));
    CHECK(support_gap(a, a) == 0.0);
}

TEST_CASE("decay of a rigid translation is flat") {
    const auto before = straight(6);
    auto after = before;
    for (auto& p : after) p += Point2{0.0, 2.0};
    const std::size_t active[] = {0, 1, 2, 3, 4, 5};
    const auto d = decay_profile(before, after, 2, 5.0, active);
    REQUIRE(d.samples.size() == 6);
    CHECK(d.samples[0].point_id == 2);
    CHECK(d.samples[1].point_id == 1);
    CHECK(d.samples[2].point_id == 3);
    CHECK(d.samples.back().chain_distance == 15.0);
    REQUIRE(d.fit.has_value());
    CHECK(d.fit->slope == Approx(0.0));
    CHECK(d.fit->intercept == Approx(std::log(2.0)));
    CHECK(d.fit->r_squared == 1.0);
}

TEST_CASE("decay fit recovers an exponential") {
    const auto before = straight(8);
    auto after = before;
    for (std::size_t i = 0; i < after.size(); ++i) {
        after[i].y = 4.0 * std::exp(-0.1 * 5.0 * static_cast<double>(i));
    }
    const std::size_t active[] = {0, 1, 2, 3, 4, 5, 6, 7};
    const auto d = decay_profile(before, after, 0, 5.0, active);
    REQUIRE(d.fit.has_value());
    CHECK(d.fit->slope == Approx(-0.1).epsilon(1e-12));
    CHECK(d.fit->intercept == Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(d.fit->r_squared == Approx(1.0));

    const std::size_t few[] = {0, 1};
    CHECK_FALSE(decay_profile(before, after, 0, 5.0, few).fit.has_value());
}

TEST_CASE("shape error examples") {
    const Polyline target = {{0, 0}, {10, 0}};
    const Polyline on = {{0, 0}, {5, 0}, {10, 0}};
    const auto zero = shape_error(on, target, 5.0);
    CHECK(zero.rms == 0.0);
    CHECK(zero.hausdorff == 0.0);

    const Polyline lifted = {{0, 3}, {5, 3}, {10, 3}};
    const auto e = shape_error(lifted, target, 5.0);
    CHECK(e.rms == Approx(3.0));
    CHECK(e.hausdorff == Approx(3.0));

    // The chain covers half the target: the uncovered end dominates Hausdorff.
    const Polyline half = {{0, 0}, {5, 0}};
    const auto h = shape_error(half, target, 5.0);
    CHECK(h.rms == 0.0);
    CHECK(h.hausdorff == Approx(5.0));

    CHECK_THROWS_AS(shape_error(on, Polyline{}, 5.0), ParameterError);
    CHECK_THROWS_AS(shape_error(Polyline{}, target, 5.0), ParameterError);
}

TEST_CASE("length audit matches brute force") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int trial = 0; trial < 50; ++trial) {
        Polyline pts(40);
        for (auto& p : pts) p = {u(rng), u(rng)};
        double brute = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t j = i + 1; j < pts.size(); ++j) brute = std::min(brute, distance(pts[i], pts[j]));
        }
        CHECK(length_audit(pts, 5.0).min_separation == brute);
    }
    const auto a = length_audit(straight(4), 5.0);
    CHECK(a.total_length == 15.0);
    CHECK(a.max_elongation == 0.0);
    CHECK(a.min_separation == 5.0);
}

TEST_CASE("metrics are translation invariant") {
    const auto base = straight(11);
    auto pts = base;
    const double bump[] = {0, 0, 0.5, 1, 2, 3, 2, 1, 0.5, 0, 0};
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i].y = bump[i];
    const Point2 shift{64.0, -32.0};
    auto base_s = base;
    auto pts_s = pts;
    for (auto& p : base_s) p += shift;
    for (auto& p : pts_s) p += shift;

    const auto w = wave_report(base, pts, 5, 0.05, 5.0);
    const auto ws = wave_report(base_s, pts_s, 5, 0.05, 5.0);
    CHECK(ws.extent == Approx(w.extent));
    CHECK(ws.signed_peak == Approx(w.signed_peak));
    CHECK(ws.support_first == w.support_first);
    CHECK(ws.support_last == w.support_last);

    const Polyline target = {{0, 0}, {50, 0}};
    Polyline target_s = target;
    for (auto& p : target_s) p += shift;
    const auto e = shape_error(pts, target, 5.0);
    const auto es = shape_error(pts_s, target_s, 5.0);
    CHECK(es.rms == Approx(e.rms));
    CHECK(es.hausdorff == Approx(e.hausdorff));

    CHECK(undriven_lateral_deviation(base_s, pts_s, 5.0, 5, 10.0) ==
          Approx(undriven_lateral_deviation(base, pts, 5.0, 5, 10.0)));
}

TEST_CASE("undriven lateral deviation skips the exclusion zone") {
    const auto base = straight(11);
    auto pts = base;
    pts[5].y = 10.0;
    pts[4].y = 4.0;
    pts[6].y = 4.0;
    pts[0].y = 0.5;
    CHECK(undriven_lateral_deviation(base, pts, 5.0, 5, 10.0) == Approx(0.5));
    // Exclusion of 7.5 µm ends halfway along the segments next to points 4 and 6.
    CHECK(undriven_lateral_deviation(base, pts, 5.0, 5, 7.5) == Approx(2.0));
    CHECK(max_lateral_deviation(base, pts, 5.0, 0.0, 50.0) == 10.0);
    CHECK(max_lateral_deviation(base, pts, 5.0, 30.0, 20.0) == 0.0);
}
