#pragma once

#include <cstddef>
#include <vector>

namespace ionx {

/// Sampled time series (taus strictly increasing).
struct TimeSeries {
    std::vector<double> taus;
    std::vector<double> values;

    std::size_t size() const { return taus.size(); }

    /// True when the sampling interval is constant to within rel_tol.
    bool is_uniform(double rel_tol = 1e-9) const;

    /// The common sampling interval; throws std::invalid_argument when the
    /// grid is not uniform or has fewer than two samples.
    double uniform_dt(double rel_tol = 1e-9) const;
};

using FluxSeries = TimeSeries;
using CurrentSeries = TimeSeries;
using ConcentrationSeries = TimeSeries;

}  // namespace ionx
