#pragma once

#include <stdexcept>
#include <string>

namespace ionx {

/// Newton (or pseudo-transient) solve failed to reach tolerance.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, double residual_norm, double tau)
        : std::runtime_error(what), residual_norm_(residual_norm), tau_(tau) {}

    double residual_norm() const { return residual_norm_; }
    double tau() const { return tau_; }

  private:
    double residual_norm_;
    double tau_;
};

}  // namespace ionx
