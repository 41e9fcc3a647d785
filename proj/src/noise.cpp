#include "ionx/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ionx/constants.hpp"
#include "ionx/faces.hpp"

namespace ionx {

void NoiseSpectrum::validate() const {
    if (omegas.size() != psd.size()) {
        throw std::invalid_argument("spectrum omega/psd size mismatch");
    }
    for (std::size_t j = 0; j < omegas.size(); ++j) {
        if (j > 0 && !(omegas[j] > omegas[j - 1])) {
            throw std::invalid_argument("spectrum omegas must be strictly increasing");
        }
        if (psd[j] < 0.0) throw std::invalid_argument("psd values must be non-negative");
    }
}

ShotParams ShotParams::from_flux(double flux, double n_pores) {
    if (!(flux >= 0.0) || !(n_pores > 0.0)) {
        throw std::invalid_argument("shot parameters must be non-negative");
    }
    return ShotParams{n_pores, flux / n_pores};
}

MembraneRC membrane_rc(const DimensionlessSystem& s, const CompartmentGrid& g,
                       const StateVector& eq, const ScalingBasis& b,
                       double v0_override) {
    if (eq.size() != g.size()) throw std::invalid_argument("state/grid size mismatch");
    // The lumping is defined at zero current; reject driven states.
    const double j_exit = eval_face(g, s, eq, g.membrane_exit_face()).species[0].flux;
    if (std::abs(j_exit) > 1e-6) {
        throw std::invalid_argument("membrane_rc needs an equilibrium (zero-flux) state");
    }

    const std::size_t mid = g.mid_membrane_compartment();
    const double c1 = eq.c(0, mid);
    const double c2 = eq.c(1, mid);
    const double d = s.membrane_thickness;

    MembraneRC rc;
    rc.capacitance = s.permittivity / d;  // eps * lambda / d in scaled units
    double conductance = 0.0;
    for (std::size_t i = 0; i < kNumSpecies; ++i) {
        const double zi = s.valences[i];
        conductance += zi * zi * s.diff_membrane[i] * (i == 0 ? c1 : c2);
    }
    rc.resistance = d / conductance;
    rc.time_constant = rc.resistance * rc.capacitance;

    if (v0_override > 0.0) {
        rc.impulse_voltage = v0_override;
    } else {
        // Voltage kick of one elementary charge on the dimensional membrane
        // capacitance (per unit cross-sectional area), in RT/F units.
        const double f = constants::faraday;
        const double cap_physical = rc.capacitance * f * f * b.concentration * b.length /
                                    (constants::gas_constant * b.temperature);
        const double volts = constants::elementary_charge / cap_physical;
        rc.impulse_voltage = volts * f / (constants::gas_constant * b.temperature);
    }
    return rc;
}

double thermal_psd(const ScalingBasis& b, const MembraneRC& rc, double bandwidth_hz) {
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    return 4.0 * constants::boltzmann * rc.resistance /
           (b.length * constants::gas_constant * b.temperature * b.concentration *
            bandwidth_hz);
}

double thermal_psd_standard(const ScalingBasis& b, const MembraneRC& rc, double omega,
                            double bandwidth_hz) {
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    // Dimensional parallel RC: Re(Z) = R' / (1 + (omega' theta')^2). The scaled
    // omega maps to omega' = omega * D_a / lambda^2 and theta' = theta * lambda^2 / D_a,
    // so omega' * theta' = omega * theta.
    const double f = constants::faraday;
    const double r_physical = rc.resistance * b.length * constants::gas_constant *
                              b.temperature / (f * f * b.diffusion * b.concentration);
    const double wt = omega * rc.time_constant;
    const double re_z = r_physical / (1.0 + wt * wt);
    const double s_volts2 = 4.0 * constants::boltzmann * b.temperature * re_z * bandwidth_hz;
    // Report in scaled voltage-PSD units (phi = F phi' / RT).
    const double phi_scale = f / (constants::gas_constant * b.temperature);
    return s_volts2 * phi_scale * phi_scale;
}

ShotPsdSample shot_voltage_psd(const ShotParams& p, const MembraneRC& rc, double omega,
                               double dc_epsilon_coeff) {
    if (!(p.n_pores > 0.0) || p.k_rate < 0.0) {
        throw std::invalid_argument("shot parameters must be positive");
    }
    const double j = p.mean_flux();
    const double theta = rc.time_constant;
    const double v0 = rc.impulse_voltage;
    ShotPsdSample out;
    out.psd = (j / (2.0 * M_PI)) * v0 * theta * theta / (1.0 + omega * omega * theta * theta);
    const double dc = j * v0 * dc_epsilon_coeff * rc.resistance;
    out.dc_impulse_weight = dc * dc;
    return out;
}

NoiseSpectrum flux_psd(const NoiseSpectrum& s_phi, const DimensionlessSystem& s,
                       double c_i0, std::size_t species) {
    s_phi.validate();
    if (species >= kNumSpecies) throw std::invalid_argument("bad species index");
    const double factor = s.diff_membrane[species] * s.valences[species] * c_i0 /
                          s.membrane_thickness;
    NoiseSpectrum out;
    out.omegas = s_phi.omegas;
    out.psd.resize(s_phi.psd.size());
    const double f2 = factor * factor;
    for (std::size_t j = 0; j < s_phi.psd.size(); ++j) out.psd[j] = f2 * s_phi.psd[j];
    out.dc_impulse_weight = f2 * s_phi.dc_impulse_weight;
    return out;
}

NoiseSpectrum snr(double flux, const NoiseSpectrum& s_j) {
    s_j.validate();
    NoiseSpectrum out;
    out.omegas = s_j.omegas;
    out.psd.resize(s_j.psd.size());
    for (std::size_t j = 0; j < s_j.psd.size(); ++j) {
        if (s_j.psd[j] == 0.0) {
            throw std::domain_error("SNR undefined where the noise PSD vanishes");
        }
        out.psd[j] = flux * flux / s_j.psd[j];
    }
    out.dc_impulse_weight = 0.0;  // deterministic offset, excluded from SNR
    return out;
}

NoiseChainResult noise_chain(const DimensionlessSystem& s, const ScalingBasis& b,
                             const CompartmentGrid& g, const StateVector& eq,
                             double steady_flux, double c_mid_driven,
                             const std::vector<double>& omegas,
                             const NoiseOptions& options) {
    NoiseChainResult out;
    out.rc = membrane_rc(s, g, eq, b, options.v0_override);
    const ShotParams shot_params = ShotParams::from_flux(steady_flux);

    out.thermal.omegas = omegas;
    out.shot.omegas = omegas;
    NoiseSpectrum total_phi;
    total_phi.omegas = omegas;
    for (double w : omegas) {
        const double th = options.thermal_model == ThermalModel::PaperForm
                              ? thermal_psd(b, out.rc, options.bandwidth_hz)
                              : thermal_psd_standard(b, out.rc, w, options.bandwidth_hz);
        const ShotPsdSample sh =
            shot_voltage_psd(shot_params, out.rc, w, options.dc_epsilon_coeff);
        out.thermal.psd.push_back(th);
        out.shot.psd.push_back(sh.psd);
        out.shot.dc_impulse_weight = sh.dc_impulse_weight;
        total_phi.psd.push_back(th + sh.psd);  // independent sources add
    }
    total_phi.dc_impulse_weight = out.shot.dc_impulse_weight;

    out.flux_total = flux_psd(total_phi, s, c_mid_driven);
    const double factor = s.diff_membrane[0] * s.valences[0] * c_mid_driven /
                          s.membrane_thickness;
    out.transfer_factor2 = factor * factor;
    out.snr = snr(steady_flux, out.flux_total);
    return out;
}

std::vector<double> log_omega_grid(double omega_min, double omega_max, std::size_t count) {
    if (!(omega_min > 0.0) || !(omega_max > omega_min) || count < 2) {
        throw std::invalid_argument("bad omega grid spec");
    }
    std::vector<double> out(count);
    const double l0 = std::log10(omega_min);
    const double l1 = std::log10(omega_max);
    for (std::size_t j = 0; j < count; ++j) {
        out[j] = std::pow(10.0, l0 + (l1 - l0) * static_cast<double>(j) /
                                     static_cast<double>(count - 1));
    }
    return out;
}

}  // namespace ionx
