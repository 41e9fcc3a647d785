#include "ionx/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ionx/banded.hpp"
#include "ionx/errors.hpp"
#include "ionx/faces.hpp"

namespace ionx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t unknown_count(std::size_t n) { return 2 + 3 * n; }

std::size_t conc_index(std::size_t k, std::size_t i) { return 2 + 3 * k + i; }
std::size_t phi_index(std::size_t k) { return 2 + 3 * k + 2; }

std::vector<double> pack(const StateVector& st) {
    const std::size_t n = st.size();
    std::vector<double> x(unknown_count(n));
    x[0] = st.phi_applied;
    x[1] = st.displacement_left;
    for (std::size_t k = 0; k < n; ++k) {
        x[conc_index(k, 0)] = st.c(0, k);
        x[conc_index(k, 1)] = st.c(1, k);
        x[phi_index(k)] = st.phi(k);
    }
    return x;
}

StateVector unpack(const std::vector<double>& x, std::size_t n, double tau) {
    StateVector st(n);
    st.phi_applied = x[0];
    st.displacement_left = x[1];
    for (std::size_t k = 0; k < n; ++k) {
        st.c(0, k) = x[conc_index(k, 0)];
        st.c(1, k) = x[conc_index(k, 1)];
        st.phi(k) = x[phi_index(k)];
    }
    st.tau = tau;
    return st;
}

double max_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double e : v) m = std::max(m, std::abs(e));
    return m;
}

bool has_negative_concentration(const std::vector<double>& x, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        if (x[conc_index(k, 0)] < 0.0 || x[conc_index(k, 1)] < 0.0) return true;
    }
    return false;
}

struct ResidualWorkspace {
    std::vector<FaceEval> faces;
    std::vector<double> f;
};

void compute_residual(const DimensionlessSystem& s, const CompartmentGrid& g,
                      const StateVector& state, const DriveMode& drive,
                      const StateVector& prev, double dtau, ResidualWorkspace& ws) {
    const std::size_t n = g.size();
    ws.faces.resize(n + 1);
    for (std::size_t f = 0; f <= n; ++f) ws.faces[f] = eval_face(g, s, state, f);
    ws.f.assign(unknown_count(n), 0.0);

    const double drive_value = drive.signal().eval(state.tau);

    // Row 0: active boundary equation.
    if (drive.kind() == DriveMode::Kind::Potentiostatic) {
        ws.f[0] = state.phi_applied - drive_value;
    } else {
        double faradaic = 0.0;
        for (std::size_t i = 0; i < kNumSpecies; ++i) {
            faradaic += s.valences[i] * ws.faces[0].species[i].flux;
        }
        ws.f[0] = (state.displacement_left - prev.displacement_left) / dtau -
                  (drive_value - faradaic);
    }

    // Row 1: displacement at the left boundary follows the potential ladder.
    const double rp0 = g.width(0) / (2.0 * s.permittivity);
    ws.f[1] = state.displacement_left - (state.phi_applied - state.phi(0)) / rp0;

    for (std::size_t k = 0; k < n; ++k) {
        const double dk = g.width(k);
        for (std::size_t i = 0; i < kNumSpecies; ++i) {
            const double jl = ws.faces[k].species[i].flux;
            const double jr = ws.faces[k + 1].species[i].flux;
            ws.f[conc_index(k, i)] =
                (state.c(i, k) - prev.c(i, k)) / dtau - (jl - jr) / dk;
        }
        double rho = -g.theta(k, s);
        for (std::size_t i = 0; i < kNumSpecies; ++i) rho += s.valences[i] * state.c(i, k);
        const double d_left = (k == 0) ? state.displacement_left : ws.faces[k].displacement;
        const double d_right = ws.faces[k + 1].displacement;
        ws.f[phi_index(k)] = (d_right - d_left) / dk - rho;
    }
}

void assemble_jacobian(const DimensionlessSystem& s, const CompartmentGrid& g,
                       const DriveMode& drive, double dtau,
                       const std::vector<FaceEval>& faces, BandedMatrix& jac) {
    const std::size_t n = g.size();
    jac.clear();

    if (drive.kind() == DriveMode::Kind::Potentiostatic) {
        jac.at(0, 0) = 1.0;
    } else {
        jac.at(0, 1) = 1.0 / dtau;
        for (std::size_t i = 0; i < kNumSpecies; ++i) {
            const auto& sp = faces[0].species[i];
            const double zi = s.valences[i];
            jac.add(0, 0, zi * sp.dflux_dpl);
            jac.add(0, conc_index(0, i), zi * sp.dflux_dcr);
            jac.add(0, phi_index(0), zi * sp.dflux_dpr);
        }
    }

    const double rp0 = g.width(0) / (2.0 * s.permittivity);
    jac.at(1, 1) = 1.0;
    jac.at(1, 0) = -1.0 / rp0;
    jac.at(1, phi_index(0)) = 1.0 / rp0;

    for (std::size_t k = 0; k < n; ++k) {
        const double dk = g.width(k);
        const double inv_dt = 1.0 / dtau;

        for (std::size_t i = 0; i < kNumSpecies; ++i) {
            const std::size_t row = conc_index(k, i);
            const auto& fl = faces[k].species[i];
            const auto& fr = faces[k + 1].species[i];
            jac.add(row, row, inv_dt);
            // -(dJ_left - dJ_right)/dk for every unknown the faces touch.
            if (k == 0) {
                jac.add(row, 0, -fl.dflux_dpl / dk);  // phi_applied
            } else {
                jac.add(row, conc_index(k - 1, i), -fl.dflux_dcl / dk);
                jac.add(row, phi_index(k - 1), -fl.dflux_dpl / dk);
            }
            jac.add(row, row, -fl.dflux_dcr / dk);
            jac.add(row, phi_index(k), -fl.dflux_dpr / dk);

            jac.add(row, row, fr.dflux_dcl / dk);
            jac.add(row, phi_index(k), fr.dflux_dpl / dk);
            if (k + 1 < n) {
                jac.add(row, conc_index(k + 1, i), fr.dflux_dcr / dk);
                jac.add(row, phi_index(k + 1), fr.dflux_dpr / dk);
            }
        }

        const std::size_t row = phi_index(k);
        for (std::size_t i = 0; i < kNumSpecies; ++i) {
            jac.add(row, conc_index(k, i), -static_cast<double>(s.valences[i]));
        }
        if (k == 0) {
            jac.add(row, 1, -1.0 / dk);  // displacement_left unknown
        } else {
            jac.add(row, phi_index(k - 1), -faces[k].ddisp_dpl / dk);
            jac.add(row, phi_index(k), -faces[k].ddisp_dpr / dk);
        }
        jac.add(row, phi_index(k), faces[k + 1].ddisp_dpl / dk);
        if (k + 1 < n) {
            jac.add(row, phi_index(k + 1), faces[k + 1].ddisp_dpr / dk);
        }
    }
}

struct NewtonResult {
    bool converged = false;
    double residual_norm = kInf;
    std::size_t iterations = 0;
};

/// Damped Newton on the implicit system; `state` is updated in place.
/// `prev` is taken by value so callers may pass the state itself for steady
/// solves (where the backward-difference terms vanish).
NewtonResult newton_solve(const DimensionlessSystem& s, const CompartmentGrid& g,
                          StateVector& state, const DriveMode& drive,
                          const StateVector prev, double dtau, double tol,
                          std::size_t max_iters) {
    const std::size_t n = g.size();
    ResidualWorkspace ws;
    BandedMatrix jac(unknown_count(n), 3, 5);
    NewtonResult result;

    compute_residual(s, g, state, drive, prev, dtau, ws);
    double norm = max_norm(ws.f);
    std::vector<double> x = pack(state);

    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        if (norm < tol) {
            result.converged = true;
            break;
        }
        assemble_jacobian(s, g, drive, dtau, ws.faces, jac);
        if (!jac.factorize()) break;
        std::vector<double> dx = ws.f;
        for (double& e : dx) e = -e;
        jac.solve(dx);

        // Line search: halve until concentrations stay non-negative and the
        // residual norm decreases. Negative iterates are damped, never clipped.
        double step = 1.0;
        bool accepted = false;
        std::vector<double> trial(x.size());
        for (int halving = 0; halving < 40; ++halving) {
            for (std::size_t j = 0; j < x.size(); ++j) trial[j] = x[j] + step * dx[j];
            if (!has_negative_concentration(trial, n)) {
                StateVector trial_state = unpack(trial, n, state.tau);
                compute_residual(s, g, trial_state, drive, prev, dtau, ws);
                const double trial_norm = max_norm(ws.f);
                if (std::isfinite(trial_norm) && (trial_norm < norm || trial_norm < tol)) {
                    x = trial;
                    state = std::move(trial_state);
                    norm = trial_norm;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        ++result.iterations;
        if (!accepted) break;
    }
    if (!result.converged && norm < tol) result.converged = true;
    result.residual_norm = norm;
    return result;
}

StateVector donnan_guess(const DimensionlessSystem& s, const CompartmentGrid& g) {
    StateVector st(g.size());
    const auto [c1, c2] = donnan_concentrations(s.fixed_charge, s.bulk_concentration);
    const double phi_donnan = -std::asinh(s.fixed_charge / (2.0 * s.bulk_concentration));
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (g.region(k) == Region::Membrane) {
            st.c(0, k) = c1;
            st.c(1, k) = c2;
            st.phi(k) = phi_donnan;
        } else {
            st.c(0, k) = s.bulk_concentration;
            st.c(1, k) = s.bulk_concentration;
            st.phi(k) = 0.0;
        }
    }
    st.phi_applied = 0.0;
    st.displacement_left = (st.phi_applied - st.phi(0)) / (g.width(0) / (2.0 * s.permittivity));
    return st;
}

}  // namespace

void SolveSettings::validate() const {
    if (!(newton_tol > 0.0)) throw std::invalid_argument("newton_tol must be positive");
    if (max_newton_iters == 0) throw std::invalid_argument("max_newton_iters must be positive");
    if (!(dt_min > 0.0) || !(dt_init >= dt_min) || !(dt_max >= dt_init)) {
        throw std::invalid_argument("need dt_min <= dt_init <= dt_max, all positive");
    }
    if (!(adapt_factor >= 1.0 && adapt_factor <= 2.0)) {
        throw std::invalid_argument("adapt_factor must be in [1, 2]");
    }
}

std::vector<double> residual(const DimensionlessSystem& s, const CompartmentGrid& g,
                             const StateVector& state, const DriveMode& drive,
                             const StateVector& prev, double dtau) {
    if (state.size() != g.size() || prev.size() != g.size()) {
        throw std::invalid_argument("state dimensions do not match grid");
    }
    if (!(dtau > 0.0)) throw std::invalid_argument("dtau must be positive (or infinity)");
    ResidualWorkspace ws;
    compute_residual(s, g, state, drive, prev, dtau, ws);
    return std::move(ws.f);
}

BandedMatrix system_jacobian(const DimensionlessSystem& s, const CompartmentGrid& g,
                             const StateVector& state, const DriveMode& drive, double dtau) {
    const std::size_t n = g.size();
    std::vector<FaceEval> faces(n + 1);
    for (std::size_t f = 0; f <= n; ++f) faces[f] = eval_face(g, s, state, f);
    BandedMatrix jac(unknown_count(n), 3, 5);
    assemble_jacobian(s, g, drive, dtau, faces, jac);
    return jac;
}

std::pair<double, double> donnan_concentrations(double fixed_charge, double c0) {
    const double c1 = 0.5 * fixed_charge +
                      std::sqrt(0.25 * fixed_charge * fixed_charge + c0 * c0);
    return {c1, c1 - fixed_charge};
}

StateVector solve_steady(const DimensionlessSystem& s, const CompartmentGrid& g,
                         const DriveMode& drive, double tau_eval,
                         const StateVector& initial, const SolveSettings& settings) {
    settings.validate();
    StateVector state = initial;
    state.tau = tau_eval;
    if (drive.kind() == DriveMode::Kind::Potentiostatic) {
        state.phi_applied = drive.signal().eval(tau_eval);
    }

    auto polish = [&](StateVector& st) -> NewtonResult {
        NewtonResult best =
            newton_solve(s, g, st, drive, st, kInf, settings.newton_tol, settings.max_newton_iters);
        if (best.converged) {
            // Tighten as far as the residual floor allows; keeps the steady
            // current drift far below the spatial-uniformity tolerance.
            for (double tol : {1e-12, 5e-13}) {
                if (tol >= settings.newton_tol) continue;
                StateVector candidate = st;
                NewtonResult r = newton_solve(s, g, candidate, drive, candidate, kInf, tol, 10);
                if (r.residual_norm <= best.residual_norm) {
                    st = std::move(candidate);
                    best = r;
                    best.converged = true;
                } else {
                    break;
                }
            }
        }
        return best;
    };

    NewtonResult direct = polish(state);
    if (direct.converged) return state;

    // Pseudo-transient continuation: march the implicit system with a growing
    // step until the steady residual is small, then polish.
    StateVector current = initial;
    current.tau = tau_eval;
    double dtau = std::max(settings.dt_init, settings.dt_min);
    ResidualWorkspace ws;
    for (int iter = 0; iter < 4000; ++iter) {
        StateVector next = current;
        next.tau = tau_eval;  // keep the drive value frozen during continuation
        if (drive.kind() == DriveMode::Kind::Potentiostatic) {
            next.phi_applied = drive.signal().eval(tau_eval);
        }
        NewtonResult r = newton_solve(s, g, next, drive, current, dtau,
                                      settings.newton_tol, settings.max_newton_iters);
        if (r.converged) {
            current = std::move(next);
            dtau = std::min(dtau * 2.0, 1e9);
            compute_residual(s, g, current, drive, current, kInf, ws);
            if (max_norm(ws.f) < 1e-7) {
                NewtonResult final = polish(current);
                if (final.converged) return current;
            }
        } else {
            dtau *= 0.25;
            if (dtau < settings.dt_min) {
                throw ConvergenceError("steady-state continuation stalled", r.residual_norm,
                                       tau_eval);
            }
        }
    }
    throw ConvergenceError("steady-state continuation did not converge", kInf, tau_eval);
}

StateVector solve_equilibrium(const DimensionlessSystem& s, const CompartmentGrid& g,
                              const SolveSettings& settings) {
    s.validate();
    const DriveMode zero = DriveMode::potentiostatic(DriveSignal::step(0.0));
    StateVector guess = donnan_guess(s, g);
    StateVector eq = solve_steady(s, g, zero, 0.0, guess, settings);
    eq.tau = 0.0;
    return eq;
}

StateVector step_transient(const DimensionlessSystem& s, const CompartmentGrid& g,
                           const StateVector& state, const DriveMode& drive, double dtau,
                           const SolveSettings& settings) {
    settings.validate();
    if (!(dtau > 0.0) || !std::isfinite(dtau)) {
        throw std::invalid_argument("dtau must be positive and finite");
    }
    StateVector next = state;
    next.tau = state.tau + dtau;
    if (drive.kind() == DriveMode::Kind::Potentiostatic) {
        next.phi_applied = drive.signal().eval(next.tau);
    }
    NewtonResult r = newton_solve(s, g, next, drive, state, dtau, settings.newton_tol,
                                  settings.max_newton_iters);
    if (!r.converged) {
        throw ConvergenceError("Newton failed for transient step", r.residual_norm, next.tau);
    }
    return next;
}

double membrane_exit_flux(const DimensionlessSystem& s, const CompartmentGrid& g,
                          const StateVector& state) {
    return eval_face(g, s, state, g.membrane_exit_face()).species[0].flux;
}

double total_current(const DimensionlessSystem& s, const CompartmentGrid& g,
                     const StateVector& state, double ddisplacement_dtau) {
    return face_ionic_current(s, g, state, 0) + ddisplacement_dtau;
}

double face_ionic_current(const DimensionlessSystem& s, const CompartmentGrid& g,
                          const StateVector& state, std::size_t f) {
    const FaceEval fe = eval_face(g, s, state, f);
    double current = 0.0;
    for (std::size_t i = 0; i < kNumSpecies; ++i) {
        current += s.valences[i] * fe.species[i].flux;
    }
    return current;
}

namespace {

void update_diagnostics(const DimensionlessSystem& s, const CompartmentGrid& g,
                        const StateVector& prev, const StateVector& next, double dtau,
                        const DriveMode& drive, RunDiagnostics& diag) {
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < kNumSpecies; ++i) {
        double dm = 0.0;
        double total = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            dm += g.width(k) * (next.c(i, k) - prev.c(i, k));
            total += g.width(k) * next.c(i, k);
        }
        const double jl = eval_face(g, s, next, 0).species[i].flux;
        const double jr = eval_face(g, s, next, n).species[i].flux;
        const double defect = std::abs(dm - dtau * (jl - jr));
        diag.max_mass_error = std::max(diag.max_mass_error, defect / std::max(1.0, total));
    }
    for (std::size_t k : {std::size_t{0}, n - 1}) {
        double charge = 0.0;
        for (std::size_t i = 0; i < kNumSpecies; ++i) charge += s.valences[i] * next.c(i, k);
        diag.max_boundary_charge = std::max(diag.max_boundary_charge, std::abs(charge));
    }
    ResidualWorkspace ws;
    compute_residual(s, g, next, drive, prev, dtau, ws);
    for (std::size_t k = 0; k < n; ++k) {
        diag.max_poisson_residual =
            std::max(diag.max_poisson_residual, std::abs(ws.f[phi_index(k)]));
    }
}

}  // namespace

SimulationResult simulate(const DimensionlessSystem& s, const CompartmentGrid& g,
                          const DriveMode& drive, double tau_end,
                          const SolveSettings& settings) {
    settings.validate();
    if (!(tau_end > 0.0)) throw std::invalid_argument("tau_end must be positive");

    SimulationResult result;
    StateVector state = solve_equilibrium(s, g, settings);

    // Landmarks the stepper lands on exactly: output and snapshot times plus
    // drive discontinuities (after which the step size restarts at dt_init).
    std::vector<double> breaks = drive.signal().breakpoints_between(0.0, tau_end);
    std::vector<std::pair<double, bool>> landmarks;  // (tau, is_breakpoint)
    for (double t : settings.output_times) {
        if (t > 0.0 && t <= tau_end) landmarks.emplace_back(t, false);
    }
    for (double t : settings.snapshot_times) {
        if (t > 0.0 && t <= tau_end) landmarks.emplace_back(t, false);
    }
    for (double t : breaks) landmarks.emplace_back(t, true);
    landmarks.emplace_back(tau_end, false);
    std::sort(landmarks.begin(), landmarks.end());
    // Merge duplicates, keeping the breakpoint flag if any copy carries it.
    std::vector<std::pair<double, bool>> merged;
    for (const auto& lm : landmarks) {
        if (!merged.empty() && std::abs(merged.back().first - lm.first) <
                                   1e-12 * std::max(1.0, std::abs(lm.first))) {
            merged.back().second = merged.back().second || lm.second;
        } else {
            merged.push_back(lm);
        }
    }

    auto wants_sample = [&](double tau, const std::vector<double>& times) {
        for (double t : times) {
            if (std::abs(t - tau) < 1e-12 * std::max(1.0, std::abs(tau))) return true;
        }
        return false;
    };

    auto record = [&](const StateVector& st, double dd_dtau) {
        if (wants_sample(st.tau, settings.output_times)) {
            result.flux.taus.push_back(st.tau);
            result.flux.values.push_back(membrane_exit_flux(s, g, st));
            result.current.taus.push_back(st.tau);
            result.current.values.push_back(total_current(s, g, st, dd_dtau));
        }
        if (wants_sample(st.tau, settings.snapshot_times)) {
            result.snapshots.push_back(st);
        }
    };

    record(state, 0.0);

    double dtau = settings.dt_init;
    std::size_t next_landmark = 0;
    while (next_landmark < merged.size()) {
        const auto [target, is_break] = merged[next_landmark];
        while (state.tau < target) {
            double dt_try = std::min(dtau, target - state.tau);
            const bool lands = (state.tau + dt_try >= target - 1e-14 * std::max(1.0, target));
            if (lands) dt_try = target - state.tau;
            StateVector next = state;
            next.tau = lands ? target : state.tau + dt_try;
            if (drive.kind() == DriveMode::Kind::Potentiostatic) {
                next.phi_applied = drive.signal().eval(next.tau);
            }
            NewtonResult r = newton_solve(s, g, next, drive, state, dt_try,
                                          settings.newton_tol, settings.max_newton_iters);
            result.diagnostics.newton_iterations += r.iterations;
            if (!r.converged) {
                ++result.diagnostics.steps_rejected;
                dtau = dt_try * 0.5;
                if (dtau < settings.dt_min) {
                    throw ConvergenceError(
                        "transient step failed at tau=" + std::to_string(state.tau),
                        r.residual_norm, state.tau);
                }
                continue;
            }
            const double dd_dtau =
                (next.displacement_left - state.displacement_left) / dt_try;
            update_diagnostics(s, g, state, next, dt_try, drive, result.diagnostics);
            ++result.diagnostics.steps_accepted;
            state = std::move(next);
            record(state, dd_dtau);
            if (r.iterations <= 5) {
                dtau = std::min(dtau * settings.adapt_factor, settings.dt_max);
            }
        }
        if (is_break) dtau = settings.dt_init;
        ++next_landmark;
    }
    return result;
}

}  // namespace ionx
