#pragma once

/**
 * @file drive.hpp
 * @brief Time-dependent boundary perturbations: step, square wave, and
 *        piecewise-constant drive. All variants are right-continuous; a step
 *        is 0 at tau = 0 and jumps for tau > 0.
 */

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ionx {

struct StepSignal {
    double amplitude = 0.0;
};

struct SquareSignal {
    double amplitude = 0.0;
    double period = 1.0;
    double duty = 0.5;
};

struct PiecewiseSignal {
    std::vector<std::pair<double, double>> breakpoints;  // (tau, value), tau strictly increasing
};

class DriveSignal {
  public:
    DriveSignal() : variant_(StepSignal{0.0}) {}
    DriveSignal(StepSignal s);
    DriveSignal(SquareSignal s);
    DriveSignal(PiecewiseSignal s);

    static DriveSignal step(double amplitude) { return DriveSignal(StepSignal{amplitude}); }
    static DriveSignal square(double amplitude, double period, double duty) {
        return DriveSignal(SquareSignal{amplitude, period, duty});
    }
    static DriveSignal piecewise(std::vector<std::pair<double, double>> pts) {
        return DriveSignal(PiecewiseSignal{std::move(pts)});
    }

    /// Value at scaled time tau >= 0; throws std::out_of_range for tau < 0.
    double eval(double tau) const;

    /// All discontinuity times in (tau0, tau1], sorted. The integrator lands
    /// on these exactly and restarts its step size across them.
    std::vector<double> breakpoints_between(double tau0, double tau1) const;

    /// Config-file syntax: step(5), square(5, 40, 0.5), piecewise(0:0, 10:5).
    std::string to_string() const;
    static DriveSignal parse(const std::string& text);

    const std::variant<StepSignal, SquareSignal, PiecewiseSignal>& variant() const {
        return variant_;
    }

  private:
    std::variant<StepSignal, SquareSignal, PiecewiseSignal> variant_;
};

}  // namespace ionx
