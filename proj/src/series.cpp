#include "ionx/series.hpp"

#include <cmath>
#include <stdexcept>

namespace ionx {

bool TimeSeries::is_uniform(double rel_tol) const {
    if (taus.size() < 2) return true;
    const double dt = taus[1] - taus[0];
    if (!(dt > 0.0)) return false;
    for (std::size_t j = 1; j < taus.size(); ++j) {
        if (std::abs((taus[j] - taus[j - 1]) - dt) > rel_tol * dt) return false;
    }
    return true;
}

double TimeSeries::uniform_dt(double rel_tol) const {
    if (taus.size() < 2 || !is_uniform(rel_tol)) {
        throw std::invalid_argument("series is not uniformly sampled");
    }
    return taus[1] - taus[0];
}

}  // namespace ionx
