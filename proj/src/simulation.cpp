#include "chainform/simulation.hpp"

#include <string>

#include "chainform/error.hpp"

namespace chainform {

Simulation::Simulation(std::vector<ChainState> chains, const MaterialParams& material, const SolverParams& solver)
    : chains_(std::move(chains)), solver_(solver) {
    validate(solver_);
    if (chains_.empty()) {
        throw ParameterError("simulation: at least one chain is required");
    }
    for (const auto& c : chains_) {
        validate(c);
    }
    rate_ = compliance_rate(material, solver_.rest_length_um, solver_);
}

FrameRecord Simulation::current_frame(bool quiescent) const {
    return make_frame(chains_, next_frame_ == 0 ? 0 : next_frame_ - 1, driver_, quiescent);
}

FrameRecord Simulation::emit_current(bool quiescent) {
    return make_frame(chains_, next_frame_++, driver_, quiescent);
}

FrameRecord Simulation::drive(const DriveStep& step) {
    if (step.point.chain >= chains_.size() || step.point.point >= chains_[step.point.chain].point_count()) {
        throw ScheduleError("drive: point " + std::to_string(step.point.point) + " of chain " +
                            std::to_string(step.point.chain) + " does not exist");
    }
    if (!is_finite(step.target)) {
        throw ScheduleError("drive: non-finite target");
    }
    driver_ = step.point;
    for (std::size_t c = 0; c < chains_.size(); ++c) {
        DrivenTargets targets;
        if (c == step.point.chain) {
            targets.emplace(step.point.point, step.target);
        }
        advance_frame(chains_[c], targets, solver_, rate_);
    }
    return make_frame(chains_, next_frame_++, driver_, false);
}

FrameRecord Simulation::idle() {
    for (std::size_t c = 0; c < chains_.size(); ++c) {
        DrivenTargets targets;
        if (driver_ && driver_->chain == c) {
            targets.emplace(driver_->point, chains_[c].points[driver_->point]);
        }
        advance_frame(chains_[c], targets, solver_, rate_);
    }
    return make_frame(chains_, next_frame_++, driver_, false);
}

std::int64_t Simulation::settle(FrameRecord& out) {
    std::int64_t sweeps = 0;
    for (std::size_t c = 0; c < chains_.size(); ++c) {
        std::vector<std::size_t> pinned;
        if (driver_ && driver_->chain == c) {
            pinned.push_back(driver_->point);
        }
        sweeps += run_until_quiescent(chains_[c], pinned, solver_, rate_);
    }
    out = make_frame(chains_, next_frame_++, driver_, true);
    return sweeps;
}

std::int64_t Simulation::execute(const WaypointMove& move, bool settle_after, const FrameSink& sink) {
    validate(move);
    if (move.point.chain >= chains_.size() || move.point.point >= chains_[move.point.chain].point_count()) {
        throw ScheduleError("move: point " + std::to_string(move.point.point) + " of chain " +
                            std::to_string(move.point.chain) + " does not exist");
    }
    const Point2 start = chains_[move.point.chain].points[move.point.point];
    for (const auto& target : expand_path(start, move.waypoints, move.step_size)) {
        sink(drive({move.point, target}));
    }
    if (settle_after) {
        // A zero-length move still takes hold of its point before settling.
        driver_ = move.point;
        FrameRecord f;
        const auto sweeps = settle(f);
        sink(f);
        return sweeps;
    }
    return 0;
}

void Simulation::restore(State s) {
    chains_ = std::move(s.chains);
    driver_ = s.driver;
    next_frame_ = s.next_frame;
}

}  // namespace chainform
