#pragma once

#include <filesystem>

#include "chainform/run.hpp"

namespace chainform {

struct ArtifactOptions {
    bool csv = true;
    bool metrics = true;
    bool svg = false;
    int frames_every = 10;  ///< SVG cadence; the first and last frames are always written
};

/// Options as requested by the scenario's outputs block.
ArtifactOptions artifact_options(const Scenario& s);

/// Writes trajectory.csv, metrics.json and frames/frame_%06d.svg plus
/// final.svg into `dir` (created when missing).
void write_artifacts(const RunResult& run, const std::filesystem::path& dir, const ArtifactOptions& options);

}  // namespace chainform
