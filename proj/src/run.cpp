#include "chainform/run.hpp"

#include <json.hpp>

#include "chainform/error.hpp"
#include "chainform/metrics.hpp"

namespace chainform {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json point_json(const Point2& p) { return ordered_json::array({p.x, p.y}); }

ordered_json wave_json(const std::string& label, std::size_t chain, std::size_t point, const WaveReport& w) {
    ordered_json j;
    j["label"] = label;
    j["chain"] = chain;
    j["point_id"] = point;
    j["supported"] = w.supported;
    j["center_id"] = w.center_id;
    j["center"] = point_json(w.center);
    j["extent_um"] = w.extent;
    j["amplitude_um"] = w.amplitude;
    j["signed_peak_um"] = w.signed_peak;
    j["support"] = ordered_json::array({w.support_first, w.support_last});
    j["axial_um"] = ordered_json::array({w.axial_begin, w.axial_end});
    return j;
}

ordered_json waves_json(const RunResult& run, std::size_t frame) {
    const auto& sc = run.scenario;
    auto arr = ordered_json::array();
    for (const auto& wp : sc.outputs.wave_points) {
        const auto w = wave_report(run.initial[wp.chain].points, frame_points(run, frame, wp.chain), wp.point_id,
                                   sc.solver.threshold, sc.solver.rest_length_um);
        arr.push_back(wave_json(wp.label, wp.chain, wp.point_id, w));
    }
    return arr;
}

}  // namespace

WaypointMove resolve_move(const MoveSpec& spec, const std::vector<ChainState>& chains) {
    if (spec.chain >= chains.size()) {
        throw ScheduleError("move names chain " + std::to_string(spec.chain) + " which does not exist");
    }
    WaypointMove m;
    m.point.chain = spec.chain;
    if (spec.point_id) {
        m.point.point = *spec.point_id;
    } else if (spec.pick) {
        m.point.point = nearest_point_id(chains[spec.chain], *spec.pick);
    } else {
        throw ScheduleError("move names neither point_id nor pick");
    }
    m.waypoints = spec.waypoints;
    m.step_size = spec.step_um;
    return m;
}

RunResult run_scenario(const Scenario& scenario, const FrameSink& observer) {
    RunResult r;
    r.scenario = scenario;
    r.initial = build_chains(scenario);
    Simulation sim(r.initial, scenario.material, scenario.solver);

    const auto record = [&](const FrameRecord& f) {
        r.frames.push_back(f);
        if (observer) observer(f);
    };
    record(sim.emit_current(true));

    for (const auto& spec : scenario.moves) {
        const WaypointMove move = resolve_move(spec, sim.chains());
        Episode e;
        e.driver = move.point;
        e.before_frame = r.frames.size() - 1;
        e.first_frame = r.frames.size();
        e.settle_sweeps = sim.execute(move, scenario.settle_between, record);
        r.total_sweeps += e.settle_sweeps;
        e.last_frame = r.frames.size() - 1;
        r.episodes.push_back(e);
    }
    if (!scenario.settle_between || scenario.moves.empty()) {
        FrameRecord f;
        const auto sweeps = sim.settle(f);
        r.total_sweeps += sweeps;
        record(f);
        if (!r.episodes.empty()) {
            r.episodes.back().settle_sweeps += sweeps;
            r.episodes.back().last_frame = r.frames.size() - 1;
        }
    }
    r.final_chains = sim.chains();
    return r;
}

std::vector<ChainSnapshot> episode_frames(const RunResult& run, const Episode& e, std::size_t chain) {
    std::vector<ChainSnapshot> out;
    for (std::size_t f = e.before_frame; f <= e.last_frame; ++f) {
        out.push_back(run.frames.at(f).chains.at(chain));
    }
    return out;
}

const std::vector<Point2>& frame_points(const RunResult& run, std::size_t frame, std::size_t chain) {
    return run.frames.at(frame).chains.at(chain).points;
}

std::string metrics_json(const RunResult& run) {
    const auto& sc = run.scenario;
    const double l = sc.solver.rest_length_um;
    const double theta = sc.solver.threshold;

    ordered_json root;
    root["scenario"] = sc.name;
    root["frames"] = run.frames.size();
    root["settle_sweeps"] = run.total_sweeps;
    root["compliance_rate"] = compliance_rate(sc.material, l, sc.solver).c;

    auto chains = ordered_json::array();
    for (std::size_t c = 0; c < run.final_chains.size(); ++c) {
        const auto& pts = run.final_chains[c].points;
        const auto audit = length_audit(pts, l);
        ordered_json j;
        j["points"] = pts.size();
        j["total_length_um"] = audit.total_length;
        j["max_elongation_um"] = audit.max_elongation;
        j["min_separation_um"] = audit.min_separation;
        j["quiescent"] = audit.max_elongation <= theta * l;
        chains.push_back(std::move(j));
    }
    root["chains"] = std::move(chains);

    auto episodes = ordered_json::array();
    for (const auto& e : run.episodes) {
        const auto c = e.driver.chain;
        const auto seg = segment_active_passive(episode_frames(run, e, c), e.driver.point, theta, l);
        const auto& before = frame_points(run, e.before_frame, c);
        const auto& after = frame_points(run, e.last_frame, c);
        const auto decay = decay_profile(before, after, e.driver.point, l, seg.active_point_ids);

        ordered_json j;
        j["driver"] = {{"chain", c}, {"point_id", e.driver.point}};
        j["frames"] = ordered_json::array({run.frames[e.first_frame].frame_index, run.frames[e.last_frame].frame_index});
        j["settle_sweeps"] = e.settle_sweeps;
        ordered_json s;
        s["active_count"] = seg.active_point_ids.size();
        s["active_point_ids"] = seg.active_point_ids;
        s["passive_point_ids"] = seg.passive_point_ids;
        s["threshold_point_id"] = seg.threshold_point_id ? ordered_json(*seg.threshold_point_id) : ordered_json();
        j["segmentation"] = std::move(s);
        ordered_json d;
        auto samples = ordered_json::array();
        for (const auto& smp : decay.samples) {
            samples.push_back(ordered_json::array({smp.point_id, smp.chain_distance, smp.displacement}));
        }
        d["samples"] = std::move(samples);
        if (decay.fit) {
            d["fit"] = {{"slope_per_um", decay.fit->slope},
                        {"intercept", decay.fit->intercept},
                        {"r_squared", decay.fit->r_squared}};
        } else {
            d["fit"] = nullptr;
        }
        j["decay"] = std::move(d);
        j["undriven_max_lateral_deviation_um"] =
            undriven_lateral_deviation(run.initial[c].points, after, l, e.driver.point, l);
        if (!sc.outputs.wave_points.empty()) {
            j["waves"] = waves_json(run, e.last_frame);
        }
        episodes.push_back(std::move(j));
    }
    root["episodes"] = std::move(episodes);

    if (!sc.outputs.wave_points.empty()) {
        root["waves"] = waves_json(run, run.frames.size() - 1);
    }

    auto shapes = ordered_json::array();
    for (const auto& t : sc.outputs.targets) {
        const auto e = shape_error(run.final_chains[t.chain].points, t.polyline, l);
        shapes.push_back({{"chain", t.chain}, {"rms_um", e.rms}, {"hausdorff_um", e.hausdorff}});
    }
    root["shape_errors"] = std::move(shapes);
    return root.dump(2) + "\n";
}

}  // namespace chainform
