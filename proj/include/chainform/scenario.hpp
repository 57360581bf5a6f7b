#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chainform/actuation.hpp"
#include "chainform/chain.hpp"
#include "chainform/geometry.hpp"
#include "chainform/material.hpp"

namespace chainform {

inline constexpr int kScenarioSchemaVersion = 1;

/// A move as written in a scenario: the driven point is named either by id or
/// by a position resolved with nearest_point_id when the move starts.
struct MoveSpec {
    std::size_t chain = 0;
    std::optional<std::size_t> point_id;
    std::optional<Point2> pick;
    std::vector<Point2> waypoints;
    double step_um = 1.0;

    friend bool operator==(const MoveSpec&, const MoveSpec&) = default;
};

struct TargetSpec {
    std::size_t chain = 0;
    Polyline polyline;

    friend bool operator==(const TargetSpec&, const TargetSpec&) = default;
};

struct WavePointSpec {
    std::string label;
    std::size_t chain = 0;
    std::size_t point_id = 0;

    friend bool operator==(const WavePointSpec&, const WavePointSpec&) = default;
};

struct OutputSpec {
    bool csv = true;
    bool svg = false;
    bool metrics = true;
    std::vector<TargetSpec> targets;
    std::vector<WavePointSpec> wave_points;

    friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct SweepSpec {
    std::string param;  ///< "k", "l" or "theta"
    std::vector<double> values;

    friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct Scenario {
    std::string name;
    std::string comment;
    std::vector<Polyline> geometry;
    MaterialParams material;
    SolverParams solver;
    bool settle_between = true;
    std::vector<MoveSpec> moves;
    OutputSpec outputs;
    std::optional<SweepSpec> sweep;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses and validates scenario JSON. Unknown keys, wrong types, values out
/// of range and unresolved references raise ScenarioError carrying the dotted
/// field path and, where it can be located, the source line.
Scenario parse_scenario(std::string_view text);

Scenario load_scenario(const std::filesystem::path& path);

/// Canonical JSON (fixed key order, two-space indent, trailing newline).
std::string dump_scenario(const Scenario& s);

void save_scenario(const Scenario& s, const std::filesystem::path& path);

/// Discretizes every geometry polyline at the scenario rest length.
std::vector<ChainState> build_chains(const Scenario& s);

/// Copy of `s` with one sweep parameter replaced: "k" sets explicit_k_pa,
/// "l" the rest length, "theta" the threshold. The result is revalidated.
Scenario with_parameter(const Scenario& s, std::string_view param, double value);

}  // namespace chainform
