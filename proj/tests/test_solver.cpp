#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "ionx/banded.hpp"
#include "ionx/faces.hpp"
#include "ionx/grid.hpp"
#include "ionx/solver.hpp"

using namespace ionx;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DimensionlessSystem reference() { return DimensionlessSystem::reference(); }

/// Small scaled grid used wherever the full 480-compartment run is overkill.
CompartmentGrid small_grid() {
    GridCounts counts;
    counts.bulk = 6;
    counts.medium = 4;
    counts.fine = 16;
    counts.core = 10;
    return build_scaled_grid(50.0, 100.0, counts);
}

StateVector uniform_electroneutral(const DimensionlessSystem& s, const CompartmentGrid& g) {
    StateVector st(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        st.c(0, k) = s.bulk_concentration;
        st.c(1, k) = s.bulk_concentration;
        st.phi(k) = 0.0;
    }
    return st;
}

}  // namespace

TEST_CASE("analytic Donnan pair") {
    const auto [c1, c2] = donnan_concentrations(1.0, 1.0);
    CHECK(c1 == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-14));
    CHECK(c2 == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-14));
    CHECK(c1 * c2 == doctest::Approx(1.0).epsilon(1e-14));  // c1 c2 = c0^2
    CHECK(c1 - c2 == doctest::Approx(1.0).epsilon(1e-14));  // c1 - c2 = X
}

TEST_CASE("steady residual of the uniform electroneutral state") {
    const DimensionlessSystem s = reference();
    const CompartmentGrid g = small_grid();
    const StateVector st = uniform_electroneutral(s, g);
    const DriveMode zero = DriveMode::potentiostatic(DriveSignal::step(0.0));
    const auto f = residual(s, g, st, zero, st, kInf);

    // Poisson rows carry the unbalanced fixed charge: +X per membrane
    // compartment, 0 in solution. Everything else vanishes.
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double expected = g.region(k) == Region::Membrane ? s.fixed_charge : 0.0;
        CHECK(f[2 + 3 * k + 2] == doctest::Approx(expected).epsilon(1e-14));
        CHECK(f[2 + 3 * k + 0] == doctest::Approx(0.0));
        CHECK(f[2 + 3 * k + 1] == doctest::Approx(0.0));
    }
    CHECK(f[0] == doctest::Approx(0.0));
    CHECK(f[1] == doctest::Approx(0.0));
}

TEST_CASE("face flux with constant concentration and linear potential") {
    // Pure migration: J = -D z c dphi/dxi on every interior face.
    DimensionlessSystem s = reference();
    s.diff_membrane = s.diff_solution;  // uniform D so the slope is exact
    const CompartmentGrid g = build_uniform_grid(2, 2, 1.0);
    StateVector st(g.size());
    const double slope = -0.1;
    for (std::size_t k = 0; k < g.size(); ++k) {
        st.c(0, k) = 2.0;
        st.c(1, k) = 2.0;
        st.phi(k) = slope * g.center(k);
    }
    for (std::size_t f = 1; f < g.size(); ++f) {
        const FaceEval fe = eval_face(g, s, st, f);
        CHECK(fe.species[0].flux == doctest::Approx(-1.0 * 2.0 * slope).epsilon(1e-12));
        CHECK(fe.species[1].flux == doctest::Approx(+1.0 * 2.0 * slope).epsilon(1e-12));
        CHECK(fe.species[0].conc == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("analytic Jacobian matches finite differences") {
    const DimensionlessSystem s = reference();
    const CompartmentGrid g = build_uniform_grid(3, 4, 0.8);
    const std::size_t n = g.size();
    const std::size_t m = 2 + 3 * n;

    // A deliberately non-trivial state.
    StateVector st(n);
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> jitter(-0.2, 0.2);
    for (std::size_t k = 0; k < n; ++k) {
        st.c(0, k) = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(k)) + jitter(rng) * 0.1;
        st.c(1, k) = 0.8 + 0.3 * std::cos(0.4 * static_cast<double>(k)) + jitter(rng) * 0.1;
        st.phi(k) = 0.3 * jitter(rng) + 0.05 * static_cast<double>(k);
    }
    st.phi_applied = 1.3;
    st.displacement_left = 0.2;
    st.tau = 2.0;
    const StateVector prev = uniform_electroneutral(s, g);

    auto perturbed = [&](std::size_t idx, double h) {
        StateVector q = st;
        if (idx == 0) q.phi_applied += h;
        else if (idx == 1) q.displacement_left += h;
        else {
            const std::size_t k = (idx - 2) / 3;
            const std::size_t slot = (idx - 2) % 3;
            if (slot == 2) q.phi(k) += h;
            else q.c(slot, k) += h;
        }
        return q;
    };

    for (const double dtau : {0.05, kInf}) {
        for (const auto& drive :
             {DriveMode::potentiostatic(DriveSignal::step(1.3)),
              DriveMode::galvanostatic(DriveSignal::step(0.01))}) {
            const BandedMatrix jac = system_jacobian(s, g, st, drive, dtau);
            const double h = 1e-7;
            for (std::size_t col = 0; col < m; ++col) {
                const auto fp = residual(s, g, perturbed(col, h), drive, prev, dtau);
                const auto fm = residual(s, g, perturbed(col, -h), drive, prev, dtau);
                for (std::size_t row = 0; row < m; ++row) {
                    const double fd = (fp[row] - fm[row]) / (2.0 * h);
                    const double an = jac.get(row, col);
                    CHECK(an == doctest::Approx(fd).epsilon(5e-5).scale(1.0));
                }
            }
        }
    }
}

TEST_CASE("equilibrium on the scaled grid: Donnan interior, neutral baths") {
    const DimensionlessSystem s = reference();
    const CompartmentGrid g = small_grid();
    const StateVector eq = solve_equilibrium(s, g);

    const auto [c1_star, c2_star] = donnan_concentrations(s.fixed_charge, s.bulk_concentration);
    const std::size_t mid = g.mid_membrane_compartment();
    CHECK(eq.c(0, mid) == doctest::Approx(c1_star).epsilon(1e-3));
    CHECK(eq.c(1, mid) == doctest::Approx(c2_star).epsilon(1e-3));

    // Bulk compartments stay at c0 and electroneutral.
    CHECK(eq.c(0, 0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(eq.c(1, 0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(eq.c(0, 0) - eq.c(1, 0)) < 1e-8);
    CHECK(std::abs(eq.c(0, g.size() - 1) - eq.c(1, g.size() - 1)) < 1e-8);

    // Zero flux on every face.
    for (std::size_t f = 0; f <= g.size(); ++f) {
        const FaceEval fe = eval_face(g, s, eq, f);
        CHECK(std::abs(fe.species[0].flux) < 1e-9);
        CHECK(std::abs(fe.species[1].flux) < 1e-9);
    }
    CHECK(std::abs(membrane_exit_flux(s, g, eq)) < 1e-9);
    CHECK(std::abs(total_current(s, g, eq, 0.0)) < 1e-9);
}

TEST_CASE("equilibrium residual is a fixed point of the transient residual") {
    const DimensionlessSystem s = reference();
    const CompartmentGrid g = small_grid();
    const StateVector eq = solve_equilibrium(s, g);
    const DriveMode zero = DriveMode::potentiostatic(DriveSignal::step(0.0));
    const auto f = residual(s, g, eq, zero, eq, 0.1);
    double norm = 0.0;
    for (double e : f) norm = std::max(norm, std::abs(e));
    CHECK(norm < 1e-9);
}

TEST_CASE("dimension mismatches are rejected") {
    const DimensionlessSystem s = reference();
    const CompartmentGrid g = small_grid();
    const DriveMode zero = DriveMode::potentiostatic(DriveSignal::step(0.0));
    StateVector wrong(g.size() + 1);
    CHECK_THROWS_AS(residual(s, g, wrong, zero, wrong, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(network_elements(g, s, wrong), std::invalid_argument);
}
