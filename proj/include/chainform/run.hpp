#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chainform/frame.hpp"
#include "chainform/scenario.hpp"
#include "chainform/simulation.hpp"

namespace chainform {

/// Frames produced while one move was executed, as indices into
/// RunResult::frames. `before_frame` is the last frame preceding the move.
struct Episode {
    PointRef driver;
    std::size_t before_frame = 0;
    std::size_t first_frame = 0;
    std::size_t last_frame = 0;
    std::int64_t settle_sweeps = 0;
};

struct RunResult {
    Scenario scenario;
    std::vector<ChainState> initial;
    std::vector<FrameRecord> frames;
    std::vector<Episode> episodes;
    std::vector<ChainState> final_chains;
    std::int64_t total_sweeps = 0;
};

/// Resolves a scenario move against the current chains; a `pick` selects the
/// nearest point at the moment the move starts.
WaypointMove resolve_move(const MoveSpec& spec, const std::vector<ChainState>& chains);

/// Executes the schedule: initial frame, every driven frame, a quiescent frame
/// after each move when settle_between is set, and a final settle otherwise.
/// `observer`, when given, sees each frame as it is produced.
RunResult run_scenario(const Scenario& scenario, const FrameSink& observer = {});

/// Snapshots of one chain over an episode, starting with the state before it.
std::vector<ChainSnapshot> episode_frames(const RunResult& run, const Episode& e, std::size_t chain);

/// Points of `chain` at a recorded frame.
const std::vector<Point2>& frame_points(const RunResult& run, std::size_t frame, std::size_t chain);

/// Per-run analysis written to metrics.json.
std::string metrics_json(const RunResult& run);

}  // namespace chainform
