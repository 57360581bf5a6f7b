#pragma once

#include <optional>

namespace chainform {

struct SolverParams;

/// Bulk material of the printed robot.
struct MaterialParams {
    double youngs_modulus_pa = 60e9;
    double poisson_ratio = 0.5;
    std::optional<double> explicit_k_pa;  ///< overrides E/(2(1+λ)) when set
    double cross_section_area_um2 = 78.53981633974483;  ///< 10 µm diameter cylinder
    double density_kg_m3 = 1000.0;

    friend bool operator==(const MaterialParams&, const MaterialParams&) = default;
};

/// Folds Pa / (µm² · µm · kg/m³) into the working per-frame rate used by the
/// solver. This is the only place the unit mix of the model is resolved;
/// tests/oracles/compliance_oracle.py re-derives it from SI quantities.
inline constexpr double kWorkingUnitScale = 2e-4;

/// Rate turning a spring elongation into a substep displacement,
/// displacement = c · ΔL · Δt² / 2.
struct ComplianceRate {
    double c = 0.0;
};

/// Throws ParameterError when an invariant of `m` does not hold.
void validate(const MaterialParams& m);

/// explicit_k when present, otherwise E / (2(1+λ)).
double effective_spring_k(const MaterialParams& m);

/// c = κ·k / (A·L·ρ) for the local length `local_length_um`. Throws
/// ConfigurationError when a stretch at the threshold would move a point by a
/// full rest length or more in one substep.
ComplianceRate compliance_rate(const MaterialParams& m, double local_length_um, const SolverParams& s);

}  // namespace chainform
