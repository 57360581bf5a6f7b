#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "chainform/artifacts.hpp"
#include "chainform/error.hpp"
#include "chainform/log.hpp"
#include "chainform/run.hpp"
#include "chainform/scenario.hpp"
#include "chainform/server.hpp"
#include "chainform/sweep.hpp"

namespace fs = std::filesystem;
using namespace chainform;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNonConvergence = 2;

int report_failure(const std::exception& e, int code) {
    std::cerr << "chainform: " << e.what() << '\n';
    return code;
}

template <class Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const NonConvergenceError& e) {
        return report_failure(e, kNonConvergence);
    } catch (const ScenarioError& e) {
        return report_failure(e, kInputError);
    } catch (const Error& e) {
        return report_failure(e, kInputError);
    } catch (const fs::filesystem_error& e) {
        return report_failure(e, kInputError);
    }
}

int cmd_run(const std::string& scenario_path, const std::string& out, bool svg, int frames_every, bool svg_only) {
    const Scenario sc = load_scenario(scenario_path);
    const auto t0 = std::chrono::steady_clock::now();
    const RunResult run = run_scenario(sc);
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    spdlog::info("{}: {} frames, {} settle sweeps, {:.1f} ms", sc.name, run.frames.size(), run.total_sweeps, ms);

    ArtifactOptions opt = artifact_options(sc);
    opt.svg = opt.svg || svg || svg_only;
    opt.frames_every = frames_every;
    if (svg_only) {
        opt.csv = false;
        opt.metrics = false;
    }
    write_artifacts(run, out, opt);
    std::cout << sc.name << ": " << run.frames.size() << " frames written to " << out << '\n';
    return kOk;
}

int cmd_sweep(const std::string& scenario_path, std::optional<std::string> param, std::vector<double> values,
              const std::string& out) {
    const Scenario sc = load_scenario(scenario_path);
    if (!param && sc.sweep) param = sc.sweep->param;
    if (values.empty() && sc.sweep) values = sc.sweep->values;
    if (!param || values.empty()) {
        throw ScenarioError("sweep needs --param and --values (or a sweep block in the scenario)");
    }
    const SweepResult result = run_sweep(sc, *param, values);

    fs::create_directories(out);
    std::cout << *param << "\tstatus\tmessage\n";
    for (const auto& row : result.rows) {
        std::cout << row.value << '\t' << (row.status == 0 ? "ok" : "failed") << '\t' << row.message << '\n';
        if (row.run) {
            std::ostringstream name;
            name << *param << '_' << row.value;
            write_artifacts(*row.run, fs::path(out) / name.str(), artifact_options(row.run->scenario));
        }
    }
    std::ofstream(fs::path(out) / "sweep.json", std::ios::binary) << sweep_report_json(result);
    if (result.ok()) {
        return kOk;
    }
    // any failed run turns the whole sweep into a non-convergence exit
    return kNonConvergence;
}

int cmd_serve(int port, const std::string& scenario_dir) {
    SessionService service(scenario_dir);
    HttpServer server(service);
    if (!server.bind("0.0.0.0", port)) {
        std::cerr << "chainform: cannot bind port " << port << '\n';
        return kInputError;
    }
    std::cout << "listening on port " << server.port() << std::endl;
    server.run();
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    init_logging();

    CLI::App app{"chainform: displacement-driven shape prediction for micro continuum robots"};
    app.require_subcommand(1);

    std::string scenario;
    std::string out = "out";
    bool svg = false;
    int frames_every = 10;

    auto* run = app.add_subcommand("run", "Run a scenario and write its trajectory and metrics");
    run->add_option("--scenario", scenario, "Scenario JSON file")->required();
    run->add_option("--out", out, "Output directory")->capture_default_str();
    run->add_flag("--svg", svg, "Also write SVG frames");
    run->add_option("--frames-every", frames_every, "Write every k-th frame as SVG")->capture_default_str();

    std::optional<std::string> param;
    std::vector<double> values;
    auto* sweep = app.add_subcommand("sweep", "Run one scenario over several values of k, l or theta");
    sweep->add_option("--scenario", scenario, "Scenario JSON file")->required();
    sweep->add_option("--param", param, "k, l or theta")->check(CLI::IsMember({"k", "l", "theta"}));
    sweep->add_option("--values", values, "Comma separated values")->delimiter(',');
    sweep->add_option("--out", out, "Output directory")->capture_default_str();

    int port = 8080;
    std::string scenario_dir = "scenarios";
    auto* serve = app.add_subcommand("serve", "Serve the session protocol over HTTP");
    serve->add_option("--port", port, "TCP port (0 picks a free one)")->capture_default_str();
    serve->add_option("--scenarios", scenario_dir, "Directory of scenarios sessions may name")->capture_default_str();

    auto* render = app.add_subcommand("render", "Run a scenario and write only SVG frames");
    render->add_option("--scenario", scenario, "Scenario JSON file")->required();
    render->add_option("--out", out, "Output directory")->capture_default_str();
    render->add_option("--frames-every", frames_every, "Write every k-th frame")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    if (*run) return guarded([&] { return cmd_run(scenario, out, svg, frames_every, false); });
    if (*sweep) return guarded([&] { return cmd_sweep(scenario, param, values, out); });
    if (*render) return guarded([&] { return cmd_run(scenario, out, true, frames_every, true); });
    if (*serve) return guarded([&] { return cmd_serve(port, scenario_dir); });
    return kInputError;
}
