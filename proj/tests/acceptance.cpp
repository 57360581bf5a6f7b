// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "chainform/metrics.hpp"
#include "chainform/run.hpp"
#include "chainform/sweep.hpp"
#include "chainform/trajectory.hpp"
#include "support.hpp"

using namespace chainform;

namespace {

// Tolerances.
constexpr double kOracleTol = 1e-6;       // µm per coordinate
constexpr double kRuntimeLimitS = 5.0;    // per scenario
constexpr double kWaveExtentUm = 60.0;
constexpr double kWaveGapUm = 30.0;
constexpr double kWaveRelTol = 0.20;
constexpr double kGoldenTol = 1e-9;       // µm

struct Golden {
    const char* scenario;
    std::size_t chain;
    double rms;
    double hausdorff;
};

// Frozen from the first converged run of each letter.
constexpr Golden kLetterGoldens[] = {
    {"letter-P", 0, 12.958433831764122, 51.07405351015372},
    {"letter-K", 0, 0.0, 0.0},
    {"letter-K", 1, 20.475548687874536, 67.85078210734503},
    {"letter-U", 0, 11.809340840941442, 23.99114860292523},
};

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[failed: " << what << "] ";
        }
    }
};

int failures = 0;

void criterion(const char* name, const std::function<void(Outcome&)>& body) {
    Outcome o;
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << "[exception: " << e.what() << "]";
    }
    if (!o.pass) ++failures;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str());
    std::fflush(stdout);
}

RunResult load_and_run(const std::string& name) { return run_scenario(load_scenario(testing::scenario_path(name))); }

double max_elongation_all(const RunResult& run) {
    double m = -INFINITY;
    for (const auto& c : run.final_chains) m = std::max(m, max_elongation(c));
    return m;
}

bool within(double value, double target, double rel) { return std::abs(value - target) <= rel * target; }

std::string fmt(double v) { return format_decimal(v); }

}  // namespace

int main() {
    criterion("quiescence-bound", [](Outcome& o) {
        for (const auto& name : testing::bundled_scenarios()) {
            const auto start = std::chrono::steady_clock::now();
            const auto run = load_and_run(name);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            const double gate = run.scenario.solver.gate();
            const double e = max_elongation_all(run);
            o.detail << name << " max_elong=" << fmt(e) << "/" << fmt(gate) << " t=" << fmt(secs) << "s; ";
            o.require(e <= gate, name + " elongation above gate");
            o.require(secs < kRuntimeLimitS, name + " slower than 5 s");
        }
    });

    criterion("oracle-equivalence", [](Outcome& o) {
        for (const auto& oc : testing::oracle_cases()) {
            const auto got = testing::replay(oc);
            double worst = 0.0;
            for (std::size_t f = 0; f < oc.frames.size(); ++f) {
                for (std::size_t i = 0; i < oc.frames[f].size(); ++i) {
                    worst = std::max(worst, std::abs(got[f][i].x - oc.frames[f][i].x));
                    worst = std::max(worst, std::abs(got[f][i].y - oc.frames[f][i].y));
                }
            }
            o.detail << oc.name << " max_err=" << worst << "; ";
            o.require(got.size() == oc.frames.size() && worst <= kOracleTol, oc.name);
        }
    });

    criterion("baseline-properties", [](Outcome& o) {
        const auto run = load_and_run("baseline");
        const auto& e = run.episodes.at(0);
        const auto& init = run.initial.at(0).points;
        const std::size_t d = e.driver.point;
        bool bounded = true;
        for (const auto& f : run.frames) {
            const auto& pts = f.chains.at(0).points;
            const double driven = distance(init[d], pts[d]);
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (i != d && distance(init[i], pts[i]) > driven) bounded = false;
            }
        }
        o.require(bounded, "non-driven displacement exceeded driven displacement");

        const auto& fin = run.final_chains.at(0).points;
        bool monotone = true;
        for (std::size_t k = 1; k <= d; ++k) {
            // Chain distance grows toward point 0 (the driver is the last point).
            if (distance(init[d - k], fin[d - k]) > distance(init[d - k + 1], fin[d - k + 1])) monotone = false;
        }
        for (std::size_t i = d + 1; i < fin.size(); ++i) {
            if (distance(init[i], fin[i]) > distance(init[i - 1], fin[i - 1])) monotone = false;
        }
        o.require(monotone, "quiescent displacement increases with chain distance");
        o.require(fin[d] == Point2{150, 60}, "drag endpoint");
        o.detail << "frames=" << run.frames.size() << " endpoint=(" << fmt(fin[d].x) << "," << fmt(fin[d].y)
                 << ") settle_sweeps=" << e.settle_sweeps;
    });

    criterion("theta-sweep", [](Outcome& o) {
        const auto base = load_scenario(testing::scenario_path("theta-sweep"));
        const auto sweep = run_sweep(base, base.sweep->param, base.sweep->values);
        std::vector<double> counts;
        for (const auto& row : sweep.rows) {
            o.require(row.status == 0, "run failed: " + row.message);
            if (!row.run) continue;
            const auto& e = row.run->episodes.at(0);
            const auto frames = episode_frames(*row.run, e, e.driver.chain);
            const auto seg = segment_active_passive(frames, e.driver.point, row.run->scenario.solver.threshold,
                                                    row.run->scenario.solver.rest_length_um);
            counts.push_back(static_cast<double>(seg.active_point_ids.size()));
            o.detail << "theta=" << fmt(row.value) << " active=" << seg.active_point_ids.size() << "; ";
        }
        o.require(counts.size() == 3 && classify_order(counts) == "strictly decreasing", "ordering");
    });

    criterion("k-and-l-sweeps", [](Outcome& o) {
        for (const char* name : {"k-sweep", "l-sweep"}) {
            const auto base = load_scenario(testing::scenario_path(name));
            const auto sweep = run_sweep(base, base.sweep->param, base.sweep->values);
            const double exclusion = sweep_exclusion(sweep);
            std::vector<double> dev;
            std::optional<Point2> driven_end;
            bool same_end = true;
            for (const auto& row : sweep.rows) {
                o.require(row.status == 0, std::string(name) + " run failed: " + row.message);
                if (!row.run) continue;
                const auto& r = *row.run;
                const auto& e = r.episodes.at(0);
                const auto& fin = r.final_chains.at(e.driver.chain).points;
                const double v = undriven_lateral_deviation(r.initial.at(e.driver.chain).points, fin,
                                                            r.scenario.solver.rest_length_um, e.driver.point, exclusion);
                dev.push_back(v);
                if (!driven_end) driven_end = fin[e.driver.point];
                same_end = same_end && fin[e.driver.point] == *driven_end;
                o.detail << name << " " << base.sweep->param << "=" << fmt(row.value) << " dev=" << fmt(v) << "; ";
            }
            const auto order = classify_order(dev);
            const bool is_k = base.sweep->param == "k";
            const bool ok = is_k ? (order == "strictly decreasing" || order == "non-increasing" || order == "constant")
                                 : (order == "strictly increasing" || order == "non-decreasing" || order == "constant");
            o.require(dev.size() == 3 && ok, std::string(name) + " ordering " + order);
            o.require(same_end, std::string(name) + " driven end differs");
        }
    });

    criterion("waves-far", [](Outcome& o) {
        const auto run = load_and_run("waves-far");
        const auto& base = run.initial.at(0).points;
        const auto& fin = run.final_chains.at(0).points;
        const auto& sc = run.scenario;
        std::vector<WaveReport> w;
        for (const auto& wp : sc.outputs.wave_points) {
            w.push_back(wave_report(base, fin, wp.point_id, sc.solver.threshold, sc.solver.rest_length_um));
            const auto& r = w.back();
            o.detail << wp.label << " support=[" << r.support_first << "," << r.support_last
                     << "] extent=" << fmt(r.extent) << " peak=" << fmt(r.signed_peak) << "; ";
            o.require(r.supported, wp.label + " has no wave");
            o.require(within(r.extent, kWaveExtentUm, kWaveRelTol), wp.label + " extent outside 60 um +-20%");
        }
        // Labels are a, b, c.
        const auto& a = w.at(0);
        const auto& b = w.at(1);
        const auto& c = w.at(2);
        o.require(!supports_overlap(a, b) && !supports_overlap(a, c) && !supports_overlap(b, c), "supports overlap");
        for (const auto& [x, y, tag] : {std::tuple{&b, &c, "b-c"}, std::tuple{&c, &a, "c-a"}}) {
            const double gap = support_gap(*x, *y);
            o.detail << "gap " << tag << "=" << fmt(gap) << "; ";
            o.require(within(gap, kWaveGapUm, kWaveRelTol), std::string("gap ") + tag + " outside 30 um +-20%");
        }
        o.require(std::signbit(c.signed_peak) != std::signbit(a.signed_peak) &&
                      std::signbit(c.signed_peak) != std::signbit(b.signed_peak),
                  "c not opposite to a and b");
    });

    criterion("waves-near", [](Outcome& o) {
        const auto run = load_and_run("waves-near");
        const auto& sc = run.scenario;
        const auto& base = run.initial.at(0).points;
        const auto& fin = run.final_chains.at(0).points;
        const auto& c_episode = run.episodes.at(2);
        const auto& pre = frame_points(run, c_episode.before_frame, 0);
        const double theta = sc.solver.threshold;
        const double l = sc.solver.rest_length_um;
        const auto& wp = sc.outputs.wave_points;

        const auto c = wave_report(base, fin, wp.at(2).point_id, theta, l);
        const double c_sign = c.signed_peak < 0 ? -1.0 : 1.0;
        const auto dev_pre = lateral_deviation(base, pre);
        const auto dev_post = lateral_deviation(base, fin);
        for (std::size_t k = 0; k < 2; ++k) {
            const auto before = wave_report(base, pre, wp[k].point_id, theta, l);
            const auto after = wave_report(base, fin, wp[k].point_id, theta, l);
            const std::size_t peak = before.center_id;
            const double shift = dev_post[peak] - dev_pre[peak];
            o.detail << wp[k].label << " peak@" << peak << " " << fmt(dev_pre[peak]) << "->" << fmt(dev_post[peak])
                     << " support=[" << after.support_first << "," << after.support_last << "]; ";
            o.require(supports_overlap(after, c), wp[k].label + " support disjoint from c");
            o.require(shift * c_sign > 0.0, wp[k].label + " peak did not follow c");
        }
        o.detail << "c support=[" << c.support_first << "," << c.support_last << "] peak=" << fmt(c.signed_peak);
    });

    criterion("letters", [](Outcome& o) {
        for (const char* name : {"letter-P", "letter-K", "letter-U"}) {
            const auto run = load_and_run(name);
            o.require(run.frames.back().quiescent, std::string(name) + " did not settle");
            for (std::size_t m = 0; m < run.episodes.size(); ++m) {
                const auto& e = run.episodes[m];
                for (const auto& w : run.scenario.moves[m].waypoints) {
                    bool visited = false;
                    for (std::size_t f = e.first_frame; f <= e.last_frame; ++f) {
                        if (frame_points(run, f, e.driver.chain)[e.driver.point] == w) visited = true;
                    }
                    o.require(visited, std::string(name) + " missed a waypoint");
                }
            }
            for (const auto& g : kLetterGoldens) {
                if (std::string(g.scenario) != name) continue;
                const TargetSpec* target = nullptr;
                for (const auto& t : run.scenario.outputs.targets) {
                    if (t.chain == g.chain) target = &t;
                }
                o.require(target != nullptr, std::string(name) + " has no target");
                if (!target) continue;
                const auto err = shape_error(run.final_chains.at(g.chain).points, target->polyline,
                                             run.scenario.solver.rest_length_um);
                o.detail << name << "[" << g.chain << "] rms=" << format_exact(err.rms)
                         << " hausdorff=" << format_exact(err.hausdorff) << " frames=" << run.frames.size() << "; ";
                o.require(std::abs(err.rms - g.rms) <= kGoldenTol && std::abs(err.hausdorff - g.hausdorff) <= kGoldenTol,
                          std::string(name) + " golden drift");
            }
        }
    });

    criterion("determinism", [](Outcome& o) {
        for (const auto& name : testing::bundled_scenarios()) {
            const auto a = trajectory_csv(load_and_run(name).frames);
            const auto b = trajectory_csv(load_and_run(name).frames);
            o.require(a == b, name + " differs between runs");
        }
        o.detail << testing::bundled_scenarios().size() << " scenarios, byte-identical CSV";
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
