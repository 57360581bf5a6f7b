#include "chainform/artifacts.hpp"

#include <cstdio>
#include <fstream>

#include "chainform/error.hpp"
#include "chainform/svg.hpp"
#include "chainform/trajectory.hpp"

namespace chainform {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw Error("cannot write " + path.string());
    }
}

}  // namespace

ArtifactOptions artifact_options(const Scenario& s) {
    ArtifactOptions o;
    o.csv = s.outputs.csv;
    o.metrics = s.outputs.metrics;
    o.svg = s.outputs.svg;
    return o;
}

void write_artifacts(const RunResult& run, const std::filesystem::path& dir, const ArtifactOptions& options) {
    std::filesystem::create_directories(dir);
    if (options.csv) {
        write_trajectory(run.frames, dir / "trajectory.csv");
    }
    if (options.metrics) {
        write_text(dir / "metrics.json", metrics_json(run));
    }
    if (options.svg && !run.frames.empty()) {
        SvgStyle style;
        for (const auto& t : run.scenario.outputs.targets) {
            style.overlays.push_back(t.polyline);
        }
        const auto frames_dir = dir / "frames";
        std::filesystem::create_directories(frames_dir);
        const std::size_t every = options.frames_every > 0 ? static_cast<std::size_t>(options.frames_every) : 0;
        for (std::size_t i = 0; i < run.frames.size(); ++i) {
            const bool last = i + 1 == run.frames.size();
            if (i == 0 || last || (every > 0 && i % every == 0)) {
                char name[32];
                std::snprintf(name, sizeof name, "frame_%06lld.svg", static_cast<long long>(run.frames[i].frame_index));
                write_text(frames_dir / name, render_svg(run.frames[i], style));
            }
        }
        write_text(dir / "final.svg", render_svg(run.frames.back(), style));
    }
}

}  // namespace chainform
