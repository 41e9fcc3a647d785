#pragma once

/**
 * @file channel.hpp
 * @brief 1D advection-diffusion propagation of the transmitted flux waveform
 *        to a passive observation point.
 *
 * The received waveform is the causal discrete convolution of the flux
 * history with the advected Gaussian kernel, summed over the source segments.
 * The singular zero-lag term of the Riemann sum is skipped.
 */

#include <vector>

#include "ionx/series.hpp"

namespace ionx {

struct ChannelSegment {
    double position = 0.0;  // source position y_k
    double share = 1.0;     // fraction of the transmitted flux
};

struct ChannelParams {
    double diffusion = 1.0;     // scaled medium diffusion coefficient
    double flow_speed = 0.0;    // u
    double observation = 10.0;  // y_obs > 0
    std::vector<ChannelSegment> segments{{0.0, 1.0}};

    void validate() const;  // D > 0, y_obs > 0, shares sum to 1
};

/// Advected Gaussian kernel (4 pi D tau)^(-1/2) exp(-(y - u tau)^2 / (4 D tau)).
/// Throws std::out_of_range for tau <= 0.
double greens_function(double diffusion, double flow_speed, double y, double tau);

/// Lag that maximizes the kernel at fixed y > 0, u > 0:
/// tau* = (-D + sqrt(D^2 + u^2 y^2)) / u^2.
double greens_peak_time(double diffusion, double flow_speed, double y);

/// Concentration waveform at the observation point for a flux series sampled
/// on a uniform grid. Throws std::invalid_argument for non-uniform sampling.
ConcentrationSeries line_source_waveform(const FluxSeries& flux, const ChannelParams& ch);

}  // namespace ionx
