#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chainform/actuation.hpp"
#include "chainform/chain.hpp"

namespace chainform {

struct ChainSnapshot {
    std::vector<Point2> points;
    std::vector<double> elongation;  ///< one per segment, µm

    friend bool operator==(const ChainSnapshot&, const ChainSnapshot&) = default;
};

/// Positions and spring stretch of every chain at one emitted frame.
struct FrameRecord {
    std::int64_t frame_index = 0;
    std::vector<ChainSnapshot> chains;
    std::optional<PointRef> driven;
    bool quiescent = false;

    friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

ChainSnapshot snapshot(const ChainState& chain);

FrameRecord make_frame(std::span<const ChainState> chains, std::int64_t frame_index, std::optional<PointRef> driven,
                       bool quiescent);

}  // namespace chainform
