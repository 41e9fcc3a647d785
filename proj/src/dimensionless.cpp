#include "ionx/dimensionless.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ionx/constants.hpp"

namespace ionx {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
    }
}

}  // namespace

void PhysicalParams::validate() const {
    require_positive(permittivity, "permittivity");
    require_positive(temperature, "temperature");
    require_positive(bulk_concentration, "bulk_concentration");
    for (std::size_t i = 0; i < kNumSpecies; ++i) {
        require_positive(diffusion_solution[i], "diffusion_solution");
        require_positive(diffusion_membrane[i], "diffusion_membrane");
    }
    require_positive(membrane_thickness, "membrane_thickness");
    require_positive(boundary_layer_width, "boundary_layer_width");
    if (fixed_charge < 0.0 || !std::isfinite(fixed_charge)) {
        throw std::invalid_argument("fixed_charge must be non-negative");
    }
    if (valences[0] != 1 || valences[1] != -1) {
        throw std::invalid_argument("expected a binary electrolyte with z1=+1, z2=-1");
    }
}

void ScalingBasis::validate() const {
    require_positive(diffusion, "basis diffusion");
    require_positive(concentration, "basis concentration");
    require_positive(length, "basis length");
    require_positive(temperature, "basis temperature");
}

double ScalingBasis::time_to_tau(double seconds) const {
    return diffusion * seconds / (length * length);
}

double ScalingBasis::tau_to_time(double tau) const {
    return tau * length * length / diffusion;
}

double ScalingBasis::flux_to_physical(double flux) const {
    return flux * diffusion * concentration / length;
}

double ScalingBasis::current_to_physical(double current) const {
    return current * constants::faraday * diffusion * concentration / length;
}

double ScalingBasis::potential_to_physical(double phi) const {
    return phi * constants::gas_constant * temperature / constants::faraday;
}

void DimensionlessSystem::validate() const {
    if (fixed_charge < 0.0 || !std::isfinite(fixed_charge)) {
        throw std::invalid_argument("scaled fixed charge X must be non-negative");
    }
    for (std::size_t i = 0; i < kNumSpecies; ++i) {
        require_positive(diff_solution[i], "scaled solution diffusion");
        require_positive(diff_membrane[i], "scaled membrane diffusion");
        if (diff_membrane[i] > diff_solution[i]) {
            throw std::invalid_argument("membrane diffusion cannot exceed solution diffusion");
        }
    }
    require_positive(membrane_thickness, "scaled membrane thickness");
    require_positive(bath_width, "scaled bath width");
    require_positive(bulk_concentration, "scaled bulk concentration");
    require_positive(permittivity, "scaled permittivity");
}

DimensionlessSystem DimensionlessSystem::reference() {
    return DimensionlessSystem{};
}

double compute_debye_length(const PhysicalParams& p) {
    p.validate();
    const double f2 = constants::faraday * constants::faraday;
    return std::sqrt(p.permittivity * constants::gas_constant * p.temperature /
                     (f2 * p.bulk_concentration));
}

ScalingBasis basis_from_params(const PhysicalParams& p, double diffusion_scale) {
    require_positive(diffusion_scale, "diffusion_scale");
    ScalingBasis b;
    b.diffusion = diffusion_scale;
    b.concentration = p.bulk_concentration;
    b.length = compute_debye_length(p);
    b.temperature = p.temperature;
    return b;
}

DimensionlessSystem nondimensionalize(const PhysicalParams& p, const ScalingBasis& b) {
    p.validate();
    b.validate();
    DimensionlessSystem s;
    s.fixed_charge = p.fixed_charge / b.concentration;
    s.valences = p.valences;
    for (std::size_t i = 0; i < kNumSpecies; ++i) {
        s.diff_solution[i] = p.diffusion_solution[i] / b.diffusion;
        s.diff_membrane[i] = p.diffusion_membrane[i] / b.diffusion;
    }
    s.membrane_thickness = p.membrane_thickness / b.length;
    s.bath_width = p.boundary_layer_width / b.length;
    s.bulk_concentration = p.bulk_concentration / b.concentration;
    const double f2 = constants::faraday * constants::faraday;
    s.permittivity = constants::gas_constant * p.temperature * p.permittivity /
                     (f2 * b.concentration * b.length * b.length);
    s.validate();
    return s;
}

PhysicalParams redimensionalize(const DimensionlessSystem& s, const ScalingBasis& b) {
    s.validate();
    b.validate();
    PhysicalParams p;
    p.temperature = b.temperature;
    p.bulk_concentration = s.bulk_concentration * b.concentration;
    p.fixed_charge = s.fixed_charge * b.concentration;
    p.valences = s.valences;
    for (std::size_t i = 0; i < kNumSpecies; ++i) {
        p.diffusion_solution[i] = s.diff_solution[i] * b.diffusion;
        p.diffusion_membrane[i] = s.diff_membrane[i] * b.diffusion;
    }
    p.membrane_thickness = s.membrane_thickness * b.length;
    p.boundary_layer_width = s.bath_width * b.length;
    const double f2 = constants::faraday * constants::faraday;
    p.permittivity = s.permittivity * f2 * b.concentration * b.length * b.length /
                     (constants::gas_constant * b.temperature);
    return p;
}

}  // namespace ionx
