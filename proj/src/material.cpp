#include "chainform/material.hpp"

#include <cmath>
#include <string>

#include "chainform/chain.hpp"
#include "chainform/error.hpp"

namespace chainform {

void validate(const MaterialParams& m) {
    if (!(m.youngs_modulus_pa > 0.0) || !std::isfinite(m.youngs_modulus_pa)) {
        throw ParameterError("material: youngs_modulus must be finite and > 0");
    }
    if (!(m.poisson_ratio > -1.0 && m.poisson_ratio <= 0.5)) {
        throw ParameterError("material: poisson_ratio must lie in (-1, 0.5]");
    }
    if (!(m.cross_section_area_um2 > 0.0) || !std::isfinite(m.cross_section_area_um2)) {
        throw ParameterError("material: cross_section_area must be finite and > 0");
    }
    if (!(m.density_kg_m3 > 0.0) || !std::isfinite(m.density_kg_m3)) {
        throw ParameterError("material: density must be finite and > 0");
    }
    if (m.explicit_k_pa && (!(*m.explicit_k_pa > 0.0) || !std::isfinite(*m.explicit_k_pa))) {
        throw ParameterError("material: explicit_k must be finite and > 0");
    }
}

double effective_spring_k(const MaterialParams& m) {
    validate(m);
    const double k = m.explicit_k_pa ? *m.explicit_k_pa : m.youngs_modulus_pa / (2.0 * (1.0 + m.poisson_ratio));
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw ParameterError("material: effective spring constant is not a positive finite number");
    }
    return k;
}

ComplianceRate compliance_rate(const MaterialParams& m, double local_length_um, const SolverParams& s) {
    validate(s);
    if (!(local_length_um > 0.0) || !std::isfinite(local_length_um)) {
        throw ParameterError("compliance_rate: local length must be finite and > 0");
    }
    const double k = effective_spring_k(m);
    const double c = kWorkingUnitScale * k / (m.cross_section_area_um2 * local_length_um * m.density_kg_m3);
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw ConfigurationError("compliance_rate: c is not a positive finite number");
    }
    const double threshold_move = c * s.gate() * s.dt * s.dt / 2.0;
    if (!(threshold_move < s.rest_length_um)) {
        throw ConfigurationError("compliance_rate: stability bound c*(theta*l)*dt^2/2 < l violated (" +
                                 std::to_string(threshold_move) + " >= " + std::to_string(s.rest_length_um) + ")");
    }
    return ComplianceRate{c};
}

}  // namespace chainform
