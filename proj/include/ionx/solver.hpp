#pragma once

/**
 * @file solver.hpp
 * @brief Coupled Nernst-Planck-Poisson solves on the compartment network:
 *        zero-current equilibrium, driven steady states, and implicit
 *        transient integration under potentiostatic or galvanostatic drive.
 *
 * Unknown layout per solve: [phi_applied, displacement_left,
 * (c1_k, c2_k, phi_k) for k = 0..N-1]. Residual rows use the pointwise form
 * of the balance equations (fluxes divided by the compartment width), so a
 * uniform electroneutral state with phi = 0 produces a Poisson residual of
 * exactly +X in each membrane compartment.
 */

#include <cstddef>
#include <functional>
#include <vector>

#include "ionx/dimensionless.hpp"
#include "ionx/drive.hpp"
#include "ionx/grid.hpp"
#include "ionx/series.hpp"
#include "ionx/state.hpp"

namespace ionx {

/// Boundary drive: an applied potential phi_A(tau) or a total current I(tau).
class DriveMode {
  public:
    enum class Kind { Potentiostatic, Galvanostatic };

    static DriveMode potentiostatic(DriveSignal signal) {
        return DriveMode(Kind::Potentiostatic, std::move(signal));
    }
    static DriveMode galvanostatic(DriveSignal current) {
        return DriveMode(Kind::Galvanostatic, std::move(current));
    }

    Kind kind() const { return kind_; }
    const DriveSignal& signal() const { return signal_; }

  private:
    DriveMode(Kind k, DriveSignal s) : kind_(k), signal_(std::move(s)) {}
    Kind kind_;
    DriveSignal signal_;
};

struct SolveSettings {
    double newton_tol = 1e-10;     // max-norm of the scaled residual
    std::size_t max_newton_iters = 30;
    double dt_init = 1e-3;
    double dt_min = 1e-12;
    double dt_max = 1.0;
    double adapt_factor = 2.0;     // step growth on fast Newton convergence
    std::vector<double> output_times;    // series sampling (landed exactly)
    std::vector<double> snapshot_times;  // full-state dumps (landed exactly)

    void validate() const;
};

/// Worst-case bookkeeping over a simulation run (per accepted step).
struct RunDiagnostics {
    double max_mass_error = 0.0;        // relative species bookkeeping defect
    double max_boundary_charge = 0.0;   // |z1 c1 + z2 c2| at the outer compartments
    double max_poisson_residual = 0.0;  // pointwise Gauss-law defect
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;
    std::size_t newton_iterations = 0;
};

struct SimulationResult {
    std::vector<StateVector> snapshots;  // at settings.snapshot_times
    FluxSeries flux;                     // membrane exit flux at output_times
    CurrentSeries current;               // total current density at output_times
    RunDiagnostics diagnostics;
};

/// Residual of the implicit time-discretized system at `state`, with the
/// previous accepted state `prev` and step dtau. Pass dtau = infinity for the
/// steady-state residual. Drive signals are evaluated at state.tau.
std::vector<double> residual(const DimensionlessSystem& s, const CompartmentGrid& g,
                             const StateVector& state, const DriveMode& drive,
                             const StateVector& prev, double dtau);

class BandedMatrix;  // banded.hpp

/// Analytic Jacobian of `residual` with respect to the unknown vector
/// [phi_applied, displacement_left, (c1_k, c2_k, phi_k)...].
BandedMatrix system_jacobian(const DimensionlessSystem& s, const CompartmentGrid& g,
                             const StateVector& state, const DriveMode& drive, double dtau);

/// Zero-current equilibrium: all fluxes vanish, Poisson holds, boundary
/// concentrations equal c0. Starting point of every transient run.
StateVector solve_equilibrium(const DimensionlessSystem& s, const CompartmentGrid& g,
                              const SolveSettings& settings = {});

/// Steady state under the drive evaluated at tau_eval (pseudo-transient
/// continuation from `initial`, then a Newton polish to tight tolerance).
StateVector solve_steady(const DimensionlessSystem& s, const CompartmentGrid& g,
                         const DriveMode& drive, double tau_eval,
                         const StateVector& initial, const SolveSettings& settings = {});

/// One implicit (backward-difference) step of size dtau from `state`,
/// solved by damped Newton. Throws ConvergenceError on failure.
StateVector step_transient(const DimensionlessSystem& s, const CompartmentGrid& g,
                           const StateVector& state, const DriveMode& drive, double dtau,
                           const SolveSettings& settings);

/// Full transient run from equilibrium under the drive.
SimulationResult simulate(const DimensionlessSystem& s, const CompartmentGrid& g,
                          const DriveMode& drive, double tau_end,
                          const SolveSettings& settings);

/// Cation flux through the membrane / right-solution boundary face.
double membrane_exit_flux(const DimensionlessSystem& s, const CompartmentGrid& g,
                          const StateVector& state);

/// Total current density at the left boundary: faradaic part plus the
/// displacement derivative supplied by the caller.
double total_current(const DimensionlessSystem& s, const CompartmentGrid& g,
                     const StateVector& state, double ddisplacement_dtau);

/// Ionic (faradaic) current through face f.
double face_ionic_current(const DimensionlessSystem& s, const CompartmentGrid& g,
                          const StateVector& state, std::size_t f);

/// Analytic Donnan pair for the membrane interior at equilibrium:
/// c1* = X/2 + sqrt(X^2/4 + c0^2), c2* = c1* - X.
std::pair<double, double> donnan_concentrations(double fixed_charge, double c0);

}  // namespace ionx
