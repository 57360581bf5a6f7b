#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "chainform/chain.hpp"
#include "chainform/geometry.hpp"
#include "chainform/material.hpp"
#include "chainform/scenario.hpp"
#include "chainform/solver.hpp"

namespace testing {

inline std::filesystem::path scenario_path(const std::string& name) {
    return std::filesystem::path(CHAINFORM_SOURCE_DIR) / "scenarios" / (name + ".json");
}

inline const std::vector<std::string>& bundled_scenarios() {
    static const std::vector<std::string> names = {"baseline",  "k-sweep",    "l-sweep",  "theta-sweep", "waves-far",
                                                   "waves-near", "letter-P", "letter-K", "letter-U"};
    return names;
}

inline chainform::ChainState make_chain(std::vector<chainform::Point2> pts, double rest = 5.0) {
    chainform::ChainState c;
    c.points = pts;
    c.prev_points = std::move(pts);
    c.rest_length = rest;
    return c;
}

struct OracleCase {
    const char* name;
    std::vector<chainform::Point2> initial;
    std::vector<chainform::Point2> targets;
    double c;
    int substeps;
    std::vector<std::vector<chainform::Point2>> frames;
};

inline const std::vector<OracleCase>& oracle_cases() {
    static const std::vector<OracleCase> cases = {
#include "oracle_frames.inc"
    };
    return cases;
}

/// Replays an oracle case through advance_frame with point 0 driven.
inline std::vector<std::vector<chainform::Point2>> replay(const OracleCase& oc) {
    chainform::SolverParams p;
    p.substeps = oc.substeps;
    auto chain = make_chain(oc.initial);
    std::vector<std::vector<chainform::Point2>> out;
    for (const auto& t : oc.targets) {
        chainform::advance_frame(chain, {{0, t}}, p, chainform::ComplianceRate{oc.c});
        out.push_back(chain.points);
    }
    return out;
}

}  // namespace testing
