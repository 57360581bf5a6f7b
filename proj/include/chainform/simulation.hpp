#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "chainform/actuation.hpp"
#include "chainform/frame.hpp"
#include "chainform/material.hpp"
#include "chainform/solver.hpp"

namespace chainform {

using FrameSink = std::function<void(const FrameRecord&)>;

/// A set of independent chains sharing material and solver parameters, driven
/// one point at a time. This is the single execution path behind both the
/// batch runner and interactive sessions.
class Simulation {
public:
    Simulation(std::vector<ChainState> chains, const MaterialParams& material, const SolverParams& solver);

    const std::vector<ChainState>& chains() const { return chains_; }
    const SolverParams& solver() const { return solver_; }
    ComplianceRate rate() const { return rate_; }

    /// Point currently held by the solver, if any. It stays pinned through
    /// settling until a move of another point begins.
    std::optional<PointRef> driver() const { return driver_; }

    /// Index the next emitted frame will carry.
    std::int64_t next_frame_index() const { return next_frame_; }

    /// Frame describing the current state without advancing anything.
    FrameRecord current_frame(bool quiescent = false) const;

    /// Emits the current state as a new frame (used for the initial frame).
    FrameRecord emit_current(bool quiescent = false);

    /// One solver frame with `step.point` held at `step.target`.
    FrameRecord drive(const DriveStep& step);

    /// One solver frame holding the current driver where it is.
    FrameRecord idle();

    /// Relaxes every chain to quiescence with the driver pinned and emits a
    /// quiescent frame. Returns the total number of sweeps used.
    std::int64_t settle(FrameRecord& out);

    /// Expands `move` from the point's present position and drives it frame
    /// by frame, then settles when `settle_after` is set. Returns the sweeps
    /// spent settling.
    std::int64_t execute(const WaypointMove& move, bool settle_after, const FrameSink& sink);

    /// Restores chains and bookkeeping from a snapshot taken with `state()`.
    struct State {
        std::vector<ChainState> chains;
        std::optional<PointRef> driver;
        std::int64_t next_frame = 0;
    };
    State state() const { return {chains_, driver_, next_frame_}; }
    void restore(State s);

private:
    std::vector<ChainState> chains_;
    SolverParams solver_;
    ComplianceRate rate_;
    std::optional<PointRef> driver_;
    std::int64_t next_frame_ = 0;
};

}  // namespace chainform
