#include "ionx/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ionx {

void ChannelParams::validate() const {
    if (!(diffusion > 0.0)) throw std::invalid_argument("channel diffusion must be positive");
    if (!(observation > 0.0)) throw std::invalid_argument("observation distance must be positive");
    if (segments.empty()) throw std::invalid_argument("channel needs at least one segment");
    double total = 0.0;
    for (const auto& seg : segments) total += seg.share;
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("segment shares must sum to 1");
    }
}

double greens_function(double diffusion, double flow_speed, double y, double tau) {
    if (!(tau > 0.0)) throw std::out_of_range("kernel requires tau > 0");
    const double arg = y - flow_speed * tau;
    const double denom = 4.0 * diffusion * tau;
    return std::exp(-arg * arg / denom) / std::sqrt(M_PI * denom);
}

double greens_peak_time(double diffusion, double flow_speed, double y) {
    if (!(flow_speed > 0.0) || !(y > 0.0)) {
        throw std::invalid_argument("peak time needs u > 0 and y > 0");
    }
    const double u2 = flow_speed * flow_speed;
    return (-diffusion + std::sqrt(diffusion * diffusion + u2 * y * y)) / u2;
}

ConcentrationSeries line_source_waveform(const FluxSeries& flux, const ChannelParams& ch) {
    ch.validate();
    if (flux.taus.size() != flux.values.size()) {
        throw std::invalid_argument("flux series taus/values mismatch");
    }
    const double dt = flux.uniform_dt();

    ConcentrationSeries out;
    out.taus = flux.taus;
    out.values.assign(flux.size(), 0.0);
    for (std::size_t i = 0; i < flux.size(); ++i) {
        double acc = 0.0;
        for (const auto& seg : ch.segments) {
            const double y = ch.observation - seg.position;
            double seg_acc = 0.0;
            for (std::size_t j = 0; j < i; ++j) {  // j == i skipped: singular, measure zero
                const double lag = flux.taus[i] - flux.taus[j];
                seg_acc += flux.values[j] * greens_function(ch.diffusion, ch.flow_speed, y, lag);
            }
            acc += seg.share * seg_acc;
        }
        out.values[i] = acc * dt;
    }
    return out;
}

}  // namespace ionx
