#include "ionx/faces.hpp"

#include <stdexcept>

namespace ionx {

FaceEval eval_face(const CompartmentGrid& g, const DimensionlessSystem& s,
                   const StateVector& state, std::size_t f) {
    const std::size_t n = g.size();
    if (state.size() != n) throw std::invalid_argument("state/grid size mismatch");
    if (f > n) throw std::out_of_range("face index out of range");

    FaceEval out;
    const double c0 = s.bulk_concentration;

    if (f == 0) {
        const double rp = g.width(0) / (2.0 * s.permittivity);
        out.phi = state.phi_applied;
        out.displacement = (state.phi_applied - state.phi(0)) / rp;
        out.ddisp_dpl = 1.0 / rp;
        out.ddisp_dpr = -1.0 / rp;
        for (std::size_t i = 0; i < kNumSpecies; ++i) {
            const double r = g.width(0) / (2.0 * g.diffusion(i, 0, s));
            const double zi = s.valences[i];
            auto& sp = out.species[i];
            sp.conc = c0;
            sp.flux = (c0 - state.c(i, 0) + zi * c0 * (state.phi_applied - state.phi(0))) / r;
            sp.dflux_dcr = -1.0 / r;
            sp.dflux_dpl = zi * c0 / r;   // w.r.t. phi_applied
            sp.dflux_dpr = -zi * c0 / r;  // w.r.t. phi_0
        }
        return out;
    }

    if (f == n) {
        const std::size_t k = n - 1;
        const double rp = g.width(k) / (2.0 * s.permittivity);
        out.phi = 0.0;  // grounded
        out.displacement = state.phi(k) / rp;
        out.ddisp_dpl = 1.0 / rp;
        for (std::size_t i = 0; i < kNumSpecies; ++i) {
            const double r = g.width(k) / (2.0 * g.diffusion(i, k, s));
            const double zi = s.valences[i];
            auto& sp = out.species[i];
            sp.conc = c0;
            sp.flux = (state.c(i, k) - c0 + zi * c0 * state.phi(k)) / r;
            sp.dflux_dcl = 1.0 / r;
            sp.dflux_dpl = zi * c0 / r;
        }
        return out;
    }

    const std::size_t kl = f - 1;
    const std::size_t kr = f;
    const double rp_l = g.width(kl) / (2.0 * s.permittivity);
    const double rp_r = g.width(kr) / (2.0 * s.permittivity);
    const double rp_sum = rp_l + rp_r;
    const double dphi = state.phi(kl) - state.phi(kr);

    out.displacement = dphi / rp_sum;
    out.ddisp_dpl = 1.0 / rp_sum;
    out.ddisp_dpr = -1.0 / rp_sum;
    out.phi = state.phi(kl) - rp_l * out.displacement;

    for (std::size_t i = 0; i < kNumSpecies; ++i) {
        const double zi = s.valences[i];
        const double r_l = g.width(kl) / (2.0 * g.diffusion(i, kl, s));
        const double r_r = g.width(kr) / (2.0 * g.diffusion(i, kr, s));
        // Potential drops across the two half-compartments, in units of z_i.
        const double alpha_l = zi * rp_l / rp_sum;
        const double alpha_r = zi * rp_r / rp_sum;
        const double a = alpha_l * dphi;
        const double b = alpha_r * dphi;

        const double u = (1.0 - a) / r_l + (1.0 + b) / r_r;
        const double w = state.c(i, kl) / r_l + state.c(i, kr) / r_r;
        const double cf = w / u;

        auto& sp = out.species[i];
        sp.conc = cf;
        sp.flux = (state.c(i, kl) - (1.0 - a) * cf) / r_l;

        sp.dflux_dcl = (1.0 - (1.0 - a) / (u * r_l)) / r_l;
        sp.dflux_dcr = -(1.0 - a) / (u * r_r * r_l);

        const double du_dpl = -alpha_l / r_l + alpha_r / r_r;
        const double dcf_dpl = -(w / (u * u)) * du_dpl;
        const double dcf_dpr = -dcf_dpl;
        sp.dflux_dpl = (alpha_l * cf - (1.0 - a) * dcf_dpl) / r_l;
        sp.dflux_dpr = (-alpha_l * cf - (1.0 - a) * dcf_dpr) / r_l;
    }
    return out;
}

}  // namespace ionx
