#pragma once

/**
 * @file noise.hpp
 * @brief Membrane RC lumping, thermal and shot noise power spectral
 *        densities, the voltage-to-flux PSD transfer, and SNR.
 *
 * Spectra are sampled over dimensionless angular frequency. The shot-noise
 * DC impulse (the delta(omega) term) is carried as a separate weight and is
 * never added to sampled values; SNR ignores it.
 */

#include <cstddef>
#include <vector>

#include "ionx/dimensionless.hpp"
#include "ionx/grid.hpp"
#include "ionx/state.hpp"

namespace ionx {

/// Lumped parallel-RC picture of the membrane at equilibrium.
struct MembraneRC {
    double capacitance = 0.0;    // C_M = eps*lambda/d (scaled)
    double resistance = 0.0;     // R_M (scaled)
    double time_constant = 0.0;  // theta = R_M * C_M
    double impulse_voltage = 0.0;  // V0, voltage kick of one unitary event
};

struct NoiseSpectrum {
    std::vector<double> omegas;
    std::vector<double> psd;
    double dc_impulse_weight = 0.0;  // coefficient of delta(omega)

    void validate() const;
};

/// Poisson shot-event description; the mean flux constrains only the product
/// N_pores * k_rate.
struct ShotParams {
    double n_pores = 1.0;
    double k_rate = 0.0;  // events per pore per unit scaled time
    double mean_flux() const { return n_pores * k_rate; }

    static ShotParams from_flux(double flux, double n_pores = 1.0);
};

enum class ThermalModel {
    PaperForm,  // 4 k_B R_M / (lambda R T c_bulk df), flat in omega
    Standard,   // 4 k_B T Re(Z) df with Re(Z) of the dimensional parallel RC
};

struct NoiseOptions {
    double bandwidth_hz = 1e6;      // measurement bandwidth df
    ThermalModel thermal_model = ThermalModel::PaperForm;
    double v0_override = 0.0;       // > 0 replaces the computed V0
    double dc_epsilon_coeff = 1.0;  // the ambiguous epsilon in (J V0 eps R)^2
};

/// RC lumping from the equilibrium state: C_M = eps*lambda/d and
/// R_M = (d/lambda) / sum(z_i^2 D_iM c_i*), with c_i* read at mid-membrane.
/// Throws std::invalid_argument when the state is not an equilibrium.
MembraneRC membrane_rc(const DimensionlessSystem& s, const CompartmentGrid& g,
                       const StateVector& eq, const ScalingBasis& b,
                       double v0_override = 0.0);

/// Thermal (Johnson-Nyquist) voltage PSD, flat in omega.
double thermal_psd(const ScalingBasis& b, const MembraneRC& rc, double bandwidth_hz);

/// Textbook alternative: 4 k_B T Re(Z(omega)) df for the dimensional
/// parallel RC, reported in the same scaled voltage-PSD units.
double thermal_psd_standard(const ScalingBasis& b, const MembraneRC& rc, double omega,
                            double bandwidth_hz);

/// Lorentzian shot-noise voltage PSD sample plus the separately carried
/// DC impulse weight (J V0 eps R)^2.
struct ShotPsdSample {
    double psd = 0.0;
    double dc_impulse_weight = 0.0;
};
ShotPsdSample shot_voltage_psd(const ShotParams& p, const MembraneRC& rc, double omega,
                               double dc_epsilon_coeff = 1.0);

/// Voltage PSD -> flux PSD: pointwise scaling by (D_iM z_i c_i0 / d)^2.
/// The DC impulse weight is scaled by the same factor.
NoiseSpectrum flux_psd(const NoiseSpectrum& s_phi, const DimensionlessSystem& s,
                       double c_i0, std::size_t species = 0);

/// SNR(omega) = J^2 / S_J(omega); the DC impulse weight is ignored.
/// Throws std::domain_error on a zero PSD sample.
NoiseSpectrum snr(double flux, const NoiseSpectrum& s_j);

struct NoiseChainResult {
    MembraneRC rc;
    NoiseSpectrum thermal;    // voltage PSD (flat)
    NoiseSpectrum shot;       // voltage PSD (Lorentzian) + DC weight
    NoiseSpectrum flux_total; // S_J of thermal + shot
    NoiseSpectrum snr;        // J^2 / S_J
    double transfer_factor2 = 0.0;  // (D_iM z_i c_i0 / d)^2 used for S_J
};

/// Full pipeline: RC lumping, both voltage PSDs, transfer to flux PSD with
/// the supplied mid-membrane steady concentration, and SNR for the steady
/// flux. ShotParams.J is set equal to steady_flux.
NoiseChainResult noise_chain(const DimensionlessSystem& s, const ScalingBasis& b,
                             const CompartmentGrid& g, const StateVector& eq,
                             double steady_flux, double c_mid_driven,
                             const std::vector<double>& omegas,
                             const NoiseOptions& options = {});

/// Log-spaced frequency grid (inclusive endpoints).
std::vector<double> log_omega_grid(double omega_min, double omega_max, std::size_t count);

}  // namespace ionx
