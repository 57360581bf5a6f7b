#include "chainform/frame.hpp"

namespace chainform {

ChainSnapshot snapshot(const ChainState& chain) {
    ChainSnapshot s;
    s.points = chain.points;
    s.elongation.reserve(chain.segment_count());
    for (std::size_t i = 0; i < chain.segment_count(); ++i) {
        s.elongation.push_back(elongation(chain, i));
    }
    return s;
}

FrameRecord make_frame(std::span<const ChainState> chains, std::int64_t frame_index, std::optional<PointRef> driven,
                       bool quiescent) {
    FrameRecord f;
    f.frame_index = frame_index;
    f.driven = driven;
    f.quiescent = quiescent;
    f.chains.reserve(chains.size());
    for (const auto& c : chains) {
        f.chains.push_back(snapshot(c));
    }
    return f;
}

}  // namespace chainform
