#pragma once

#include <stdexcept>
#include <string>

namespace chainform {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Material or solver parameters outside their admissible range.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A parameter combination that violates a stability bound.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// A polyline that cannot be split into whole rest-length segments.
class DiscretizationError : public Error {
public:
    using Error::Error;
};

/// Coincident points where a direction is required.
class DegenerateGeometryError : public Error {
public:
    using Error::Error;
};

class ScheduleError : public Error {
public:
    using Error::Error;
};

/// Relaxation ran out of sweeps with segments still above the threshold.
class NonConvergenceError : public Error {
public:
    NonConvergenceError(const std::string& what, double max_residual)
        : Error(what), max_residual_(max_residual) {}

    double max_residual() const noexcept { return max_residual_; }

private:
    double max_residual_;
};

/// Scenario parse or validation failure. `field` is a dotted path when known,
/// `line` is 1-based when the failure came from the JSON parser.
class ScenarioError : public Error {
public:
    ScenarioError(const std::string& what, std::string field = {}, int line = 0)
        : Error(what), field_(std::move(field)), line_(line) {}

    const std::string& field() const noexcept { return field_; }
    int line() const noexcept { return line_; }

private:
    std::string field_;
    int line_;
};

}  // namespace chainform
