#pragma once

/**
 * @file faces.hpp
 * @brief Face values of the compartment network: the potential and species
 *        concentrations on compartment boundaries, the electric displacement
 *        carried by the Poisson ladder, and the species fluxes with their
 *        partial derivatives.
 *
 * Each compartment contributes a half-resistance delta_k/(2 D_ip) per species
 * and delta_k/(2 eps) on the potential ladder. Interior face values follow
 * from flux continuity across the two adjoining half-compartments; the face
 * concentration entering the migration source is the value this continuity
 * condition selects, so the scheme is the network model itself, not an
 * interpolation of it. Boundary faces carry the Dirichlet values c0 and
 * phi_applied / ground.
 *
 * Derivative slots are with respect to the adjacent unknowns:
 *   left  slot: c_{i,f-1} and phi_{f-1}   (face 0: phi_applied; c side fixed)
 *   right slot: c_{i,f}   and phi_f       (face N: both fixed, slots zero)
 */

#include <array>
#include <cstddef>

#include "ionx/dimensionless.hpp"
#include "ionx/grid.hpp"
#include "ionx/state.hpp"

namespace ionx {

struct FaceSpeciesEval {
    double conc = 0.0;  // c_i at the face
    double flux = 0.0;  // J_i through the face
    double dflux_dcl = 0.0;
    double dflux_dcr = 0.0;
    double dflux_dpl = 0.0;
    double dflux_dpr = 0.0;
};

struct FaceEval {
    double phi = 0.0;           // potential at the face
    double displacement = 0.0;  // D on the ladder segment through this face
    double ddisp_dpl = 0.0;
    double ddisp_dpr = 0.0;
    std::array<FaceSpeciesEval, kNumSpecies> species{};
};

/// Evaluate face f (0..N) of the network at the given state.
FaceEval eval_face(const CompartmentGrid& g, const DimensionlessSystem& s,
                   const StateVector& state, std::size_t f);

}  // namespace ionx
