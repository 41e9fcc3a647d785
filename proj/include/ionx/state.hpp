#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ionx/dimensionless.hpp"

namespace ionx {

/**
 * Solution state of the membrane system at one instant of scaled time:
 * per-compartment ion concentrations, per-compartment (center) potentials,
 * the applied potential at the left boundary face, and the electric
 * displacement at the left boundary. The right boundary face is grounded.
 */
class StateVector {
  public:
    StateVector() = default;
    explicit StateVector(std::size_t n_compartments)
        : phi_(n_compartments, 0.0) {
        for (auto& ci : c_) ci.assign(n_compartments, 0.0);
    }

    std::size_t size() const { return phi_.size(); }

    double c(std::size_t species, std::size_t k) const { return c_[species][k]; }
    double& c(std::size_t species, std::size_t k) { return c_[species][k]; }
    double phi(std::size_t k) const { return phi_[k]; }
    double& phi(std::size_t k) { return phi_[k]; }

    const std::vector<double>& concentrations(std::size_t species) const { return c_[species]; }
    const std::vector<double>& potentials() const { return phi_; }

    double phi_applied = 0.0;        // potential of the left boundary face
    double displacement_left = 0.0;  // D(-delta/lambda, tau)
    double tau = 0.0;

  private:
    std::array<std::vector<double>, kNumSpecies> c_;
    std::vector<double> phi_;
};

}  // namespace ionx
