#include "chainform/sweep.hpp"

#include <algorithm>
#include <future>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "chainform/error.hpp"
#include "chainform/metrics.hpp"

namespace chainform {

namespace {

SweepRow run_one(const Scenario& base, const std::string& param, double value) {
    SweepRow row;
    row.value = value;
    try {
        row.run = run_scenario(with_parameter(base, param, value));
    } catch (const NonConvergenceError& e) {
        row.status = 2;
        row.message = e.what();
    } catch (const Error& e) {
        row.status = 1;
        row.message = e.what();
    }
    return row;
}

}  // namespace

bool SweepResult::ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.status == 0; });
}

SweepResult run_sweep(const Scenario& base, const std::string& param, const std::vector<double>& values) {
    if (values.empty()) {
        throw ScenarioError("sweep needs at least one value", "sweep.values");
    }
    std::vector<std::future<SweepRow>> pending;
    pending.reserve(values.size());
    for (const double v : values) {
        pending.push_back(std::async(std::launch::async, run_one, std::cref(base), std::cref(param), v));
    }
    SweepResult result;
    result.param = param;
    for (auto& f : pending) {
        result.rows.push_back(f.get());
        const auto& row = result.rows.back();
        spdlog::debug("sweep {}={} status {}", param, row.value, row.status);
    }
    return result;
}

std::string classify_order(const std::vector<double>& v) {
    bool inc = true;
    bool dec = true;
    bool strict_inc = true;
    bool strict_dec = true;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] < v[i - 1]) inc = strict_inc = false;
        if (v[i] > v[i - 1]) dec = strict_dec = false;
        if (v[i] == v[i - 1]) strict_inc = strict_dec = false;
    }
    if (inc && dec) return "constant";
    if (strict_inc) return "strictly increasing";
    if (strict_dec) return "strictly decreasing";
    if (inc) return "non-decreasing";
    if (dec) return "non-increasing";
    return "mixed";
}

double sweep_exclusion(const SweepResult& sweep) {
    double l = 0.0;
    for (const auto& r : sweep.rows) {
        if (r.run) l = std::max(l, r.run->scenario.solver.rest_length_um);
    }
    return l;
}

std::string sweep_report_json(const SweepResult& sweep) {
    using ordered_json = nlohmann::ordered_json;
    const double exclusion = sweep_exclusion(sweep);

    ordered_json root;
    root["param"] = sweep.param;
    root["undriven_exclusion_um"] = exclusion;
    auto rows = ordered_json::array();
    std::vector<double> deviation;
    std::vector<double> active;
    std::vector<std::vector<Point2>> driven_final;
    for (const auto& r : sweep.rows) {
        ordered_json j;
        j["value"] = r.value;
        j["status"] = r.status;
        if (!r.run) {
            j["message"] = r.message;
            rows.push_back(std::move(j));
            continue;
        }
        const auto& run = *r.run;
        const auto& sc = run.scenario;
        std::vector<Point2> ends;
        auto ends_json = ordered_json::array();
        for (const auto& e : run.episodes) {
            const Point2 p = run.final_chains[e.driver.chain].points[e.driver.point];
            ends.push_back(p);
            ends_json.push_back(ordered_json::array({p.x, p.y}));
        }
        j["driven_final"] = std::move(ends_json);
        driven_final.push_back(std::move(ends));
        if (!run.episodes.empty()) {
            const auto& e = run.episodes.front();
            const auto c = e.driver.chain;
            const double dev = undriven_lateral_deviation(run.initial[c].points, run.final_chains[c].points,
                                                          sc.solver.rest_length_um, e.driver.point, exclusion);
            const auto seg = segment_active_passive(episode_frames(run, e, c), e.driver.point, sc.solver.threshold,
                                                    sc.solver.rest_length_um);
            j["undriven_max_lateral_deviation_um"] = dev;
            j["active_count"] = seg.active_point_ids.size();
            j["threshold_point_id"] =
                seg.threshold_point_id ? ordered_json(*seg.threshold_point_id) : ordered_json();
            deviation.push_back(dev);
            active.push_back(static_cast<double>(seg.active_point_ids.size()));
        }
        j["settle_sweeps"] = run.total_sweeps;
        rows.push_back(std::move(j));
    }
    root["runs"] = std::move(rows);
    ordered_json orderings;
    orderings["undriven_max_lateral_deviation"] = classify_order(deviation);
    orderings["active_count"] = classify_order(active);
    orderings["driven_final_identical"] =
        !driven_final.empty() && std::all_of(driven_final.begin(), driven_final.end(),
                                             [&](const auto& d) { return d == driven_final.front(); });
    root["orderings"] = std::move(orderings);
    root["ok"] = sweep.ok();
    return root.dump(2) + "\n";
}

}  // namespace chainform
