#pragma once

/**
 * @file dimensionless.hpp
 * @brief Physical and dimensionless parameter sets for the membrane system
 *        and the normalization map between them.
 *
 * The simulator itself runs entirely in dimensionless units; physical units
 * appear only at this boundary. Lengths are measured in Debye lengths,
 * diffusion coefficients relative to D_a, concentrations relative to c_bulk,
 * potentials in thermal-voltage units RT/F.
 */

#include <array>
#include <cstddef>

namespace ionx {

inline constexpr std::size_t kNumSpecies = 2;

/// Dimensional description of the membrane system (SI units).
struct PhysicalParams {
    double permittivity = 0.0;        // C^2 N^-1 m^-2 (absolute, not relative)
    double temperature = 0.0;         // K
    double bulk_concentration = 0.0;  // mol m^-3
    std::array<double, kNumSpecies> diffusion_solution{};  // m^2 s^-1
    std::array<double, kNumSpecies> diffusion_membrane{};  // m^2 s^-1
    double membrane_thickness = 0.0;    // m
    double boundary_layer_width = 0.0;  // m
    double fixed_charge = 0.0;          // mol m^-3
    std::array<int, kNumSpecies> valences{+1, -1};

    /// Throws std::invalid_argument unless all magnitudes are positive and
    /// the valences are the binary +1/-1 pair.
    void validate() const;
};

/// Scaling factors D_a, c_bulk, lambda used by the normalization relations.
struct ScalingBasis {
    double diffusion = 0.0;      // D_a, m^2 s^-1
    double concentration = 0.0;  // c_bulk, mol m^-3
    double length = 0.0;         // lambda, m
    double temperature = 298.0;  // K, needed by the potential scale RT/F

    void validate() const;

    // Unit maps for the quantities that cross the I/O boundary.
    double time_to_tau(double seconds) const;
    double tau_to_time(double tau) const;
    double flux_to_physical(double flux) const;      // -> mol m^-2 s^-1
    double current_to_physical(double current) const;  // -> A m^-2
    double potential_to_physical(double phi) const;  // -> V
};

/// All scaled parameters of the membrane system.
struct DimensionlessSystem {
    double fixed_charge = 1.0;  // X
    std::array<int, kNumSpecies> valences{+1, -1};
    std::array<double, kNumSpecies> diff_solution{1.0, 1.0};   // D_iS
    std::array<double, kNumSpecies> diff_membrane{0.1, 0.1};   // D_iM
    double membrane_thickness = 50.0;    // d, in lambda
    double bath_width = 100.0;           // delta, in lambda
    double bulk_concentration = 1.0;     // c0
    double permittivity = 1.0;           // epsilon

    void validate() const;

    /// The paper's reference configuration: X=1, z=+/-1, d=50, delta=100,
    /// D_S=1, D_M=0.1, c0=1, epsilon=1.
    static DimensionlessSystem reference();
};

/// Debye length sqrt(eps*R*T / (F^2 * c_bulk)) in meters.
double compute_debye_length(const PhysicalParams& p);

/// Scaling basis with lambda computed from the parameters themselves.
ScalingBasis basis_from_params(const PhysicalParams& p, double diffusion_scale);

DimensionlessSystem nondimensionalize(const PhysicalParams& p, const ScalingBasis& b);
PhysicalParams redimensionalize(const DimensionlessSystem& s, const ScalingBasis& b);

}  // namespace ionx
