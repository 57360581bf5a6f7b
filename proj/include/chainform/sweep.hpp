#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainform/run.hpp"
#include "chainform/scenario.hpp"

namespace chainform {

struct SweepRow {
    double value = 0.0;
    int status = 0;  ///< process exit code the run alone would have produced
    std::string message;
    std::optional<RunResult> run;
};

struct SweepResult {
    std::string param;
    std::vector<SweepRow> rows;

    bool ok() const;
};

/// One independent run per value, executed concurrently.
SweepResult run_sweep(const Scenario& base, const std::string& param, const std::vector<double>& values);

/// "strictly increasing", "strictly decreasing", "non-decreasing",
/// "non-increasing", "constant" or "mixed".
std::string classify_order(const std::vector<double>& values);

/// Comparison table across the sweep: driven-point end positions, undriven
/// lateral deviation, active counts of the first move, and their orderings.
std::string sweep_report_json(const SweepResult& sweep);

/// Rest-arc exclusion around the driven point used for "undriven body"
/// deviations: the largest rest length in the sweep.
double sweep_exclusion(const SweepResult& sweep);

}  // namespace chainform
